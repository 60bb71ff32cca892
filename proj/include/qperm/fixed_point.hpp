// Copyright 2026 The qperm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qperm/errors.hpp"
#include "qperm/grover.hpp"
#include "qperm/permutation.hpp"
#include "qperm/rng.hpp"
#include "qperm/state_vector.hpp"

namespace qperm {

/// Search for points fixed by sigma^power on the doubled register H_a (x) H_b.
///
/// Wire 0 is a, wire 1 is b. The start state is (U (x) I)|v>, |v> the maximally
/// correlated state, so its support is {|tau(s)>|s>} with tau = sigma^power and
/// the marked (diagonal) part is exactly the fixed points of tau.
struct FixedPointInstance {
    Permutation sigma;
    uint64_t power = 1;
    size_t t = 1;

    /// With `t` absent the marked count is computed from the white-box
    /// permutation. With `check_t`, a caller-supplied t must match it.
    FixedPointInstance(Permutation s, uint64_t pw = 1, std::optional<size_t> marked = {}, bool check_t = true)
        : sigma(std::move(s)), power(pw) {
        if (power == 0) {
            throw InvalidArgument("power must be >= 1");
        }
        if (sigma.size() < 2) {
            throw InvalidArgument("fixed-point search needs N >= 2");
        }
        const size_t actual = fixed_points(target()).size();
        t = marked ? *marked : actual;
        if (check_t && t != actual) {
            throw InvalidArgument("t = " + std::to_string(t) + " but sigma^" + std::to_string(power) + " has " +
                                  std::to_string(actual) + " fixed points");
        }
        if (t == 0) {
            throw InvalidArgument("sigma^" + std::to_string(power) + " has no fixed point");
        }
    }

    size_t N() const { return sigma.size(); }
    Permutation target() const { return qperm::power(sigma, power); }
    RegisterLayout layout() const { return RegisterLayout({N(), N()}); }
};

struct FixedPointOptions {
    uint64_t seed = 0;
    /// Measure-and-verify rounds before giving up. The circuit output is only
    /// probabilistically correct (e.g. 0.961 at N = 16), so one retry budget
    /// covers the residual failure probability.
    size_t max_attempts = 8;
    /// Points already known; they are removed from the marked set, and t is
    /// reduced accordingly.
    std::vector<size_t> exclude;
    /// Override of the iteration count (defaults to optimal_iterations).
    std::optional<size_t> iterations;
};

struct FixedPointResult {
    size_t element = 0;
    GroverTrace trace;
    size_t oracle_calls_quantum = 0;
    size_t oracle_calls_classical = 0;
};

namespace detail {

inline double marked_mass(const StateVector &s, const std::vector<size_t> &marked) {
    double p = 0;
    for (size_t i : marked) {
        p += std::norm(s[i]);
    }
    return p;
}

/// -U_w U_id with U_id = I - 2P and U_w = (U (x) I)(I - 2|v><v|)(U^-1 (x) I).
inline void fixed_point_iteration(StateVector &state, const std::vector<size_t> &marked, const StateVector &v,
                                  const Permutation &u, const Permutation &u_inv) {
    state.reflect_about_marked(marked);
    state.apply_permutation(0, u_inv);
    state.reflect_about_state(v);
    state.apply_permutation(0, u);
    state.negate();
}

}  // namespace detail

/// Prepares (U (x) I)|v> and returns it with the reference state |v>.
inline std::pair<StateVector, StateVector> fixed_point_start(const FixedPointInstance &inst) {
    const auto v = entangled_uniform(inst.layout());
    auto state = v;
    state.apply_permutation(0, inst.target());
    return {std::move(state), v};
}

inline FixedPointResult grover_fixed_point(const FixedPointInstance &inst, const FixedPointOptions &opts = {}) {
    const size_t N = inst.N();
    const auto tau = inst.target();
    const auto tau_inv = tau.inverse();
    const auto layout = inst.layout();

    std::set<size_t> excluded(opts.exclude.begin(), opts.exclude.end());
    std::vector<size_t> marked;
    for (size_t s = 0; s < N; s++) {
        if (!excluded.count(s)) {
            marked.push_back(s * N + s);
        }
    }
    size_t excluded_fixed = 0;
    for (size_t s : excluded) {
        if (s >= N) {
            throw InvalidArgument("excluded point out of range");
        }
        excluded_fixed += tau(s) == s;
    }
    if (excluded_fixed >= inst.t) {
        throw InvalidArgument("every marked point is excluded");
    }
    const size_t t = inst.t - excluded_fixed;
    const size_t iterations = opts.iterations ? *opts.iterations : optimal_iterations(N, t);

    auto [state, v] = fixed_point_start(inst);
    FixedPointResult out;
    out.trace.iterations = iterations;
    out.trace.success.push_back(detail::marked_mass(state, marked));
    for (size_t k = 0; k < iterations; k++) {
        detail::fixed_point_iteration(state, marked, v, tau, tau_inv);
        out.trace.success.push_back(detail::marked_mass(state, marked));
    }

    Rng rng(opts.seed);
    const std::vector<size_t> wire_b{1};
    for (size_t attempt = 1; attempt <= opts.max_attempts; attempt++) {
        // Every attempt re-runs the same circuit: one U to prepare, U^-1 and U per iteration.
        out.oracle_calls_quantum += 1 + 2 * iterations;
        const size_t s = state.sample(wire_b, rng)[0];
        out.oracle_calls_classical++;
        if (tau(s) == s && !excluded.count(s)) {
            out.element = s;
            out.trace.attempts = attempt;
            return out;
        }
    }
    throw VerificationError("no measured point was fixed by sigma^" + std::to_string(inst.power) + " after " +
                            std::to_string(opts.max_attempts) + " attempts");
}

/// Amplitudes after a single -U_w U_id with exactly one marked fixed point s0:
/// first = <s0 s0|psi>, second = the common amplitude on |tau(s)>|s>, s != s0.
/// `exclude` unmarks fixed points, which is the only way to single out one
/// point when N = 2. Throws VerificationError if the off-target amplitudes are
/// not uniform to 1e-12.
inline std::pair<double, double> one_iteration_check(const FixedPointInstance &inst,
                                                     const std::vector<size_t> &exclude = {}) {
    const size_t N = inst.N();
    const auto tau = inst.target();
    std::vector<size_t> marked_points;
    for (size_t s : fixed_points(tau)) {
        if (std::find(exclude.begin(), exclude.end(), s) == exclude.end()) {
            marked_points.push_back(s);
        }
    }
    if (marked_points.size() != 1) {
        throw InvalidArgument("one_iteration_check needs exactly one marked fixed point");
    }
    const size_t s0 = marked_points[0];
    auto [state, v] = fixed_point_start(inst);
    detail::fixed_point_iteration(state, {s0 * N + s0}, v, tau, tau.inverse());

    const auto target = state[s0 * N + s0];
    std::optional<amp_t> other;
    for (size_t s = 0; s < N; s++) {
        if (s == s0) {
            continue;
        }
        const auto a = state[tau(s) * N + s];
        if (!other) {
            other = a;
        } else if (std::abs(a - *other) > 1e-12) {
            throw VerificationError("off-target amplitudes are not uniform");
        }
    }
    if (std::abs(target.imag()) > 1e-12 || std::abs(other->imag()) > 1e-12) {
        throw VerificationError("amplitudes acquired an imaginary part");
    }
    return {target.real(), other->real()};
}

/// All cycles of sigma of length exactly n, each from its smallest element,
/// sorted. Every element on a cycle of length dividing n is fixed by sigma^n;
/// the search is repeated with already-traced cycles excluded until all t such
/// points are covered, and cycles of other lengths are filtered out.
inline std::vector<std::vector<size_t>> find_cycle(const Permutation &sigma, size_t n, uint64_t seed = 0,
                                                   size_t *quantum_calls = nullptr) {
    if (n == 0) {
        throw InvalidArgument("cycle length must be >= 1");
    }
    FixedPointInstance inst(sigma, n);
    std::vector<size_t> covered;
    std::vector<std::vector<size_t>> found;
    size_t calls = 0;
    Rng seeds(seed);
    while (covered.size() < inst.t) {
        FixedPointOptions opts;
        opts.seed = seeds.next_u64();
        opts.exclude = covered;
        auto r = grover_fixed_point(inst, opts);
        calls += r.oracle_calls_quantum;
        auto cycle = cycle_through(sigma, r.element);
        covered.insert(covered.end(), cycle.begin(), cycle.end());
        if (cycle.size() == n) {
            found.push_back(std::move(cycle));
        }
    }
    std::sort(found.begin(), found.end());
    if (quantum_calls) {
        *quantum_calls = calls;
    }
    return found;
}

}  // namespace qperm
