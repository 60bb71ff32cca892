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
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qperm/errors.hpp"
#include "qperm/finite_group.hpp"
#include "qperm/grover.hpp"
#include "qperm/permutation.hpp"
#include "qperm/rng.hpp"
#include "qperm/state_vector.hpp"

namespace qperm {

/// M permutation programs on {0..N-1}; program j is index j (0-based).
class ProgramBank {
   public:
    explicit ProgramBank(std::vector<Permutation> perms) : perms_(std::move(perms)) {
        if (perms_.size() < 2) {
            throw InvalidArgument("a program bank needs M >= 2 programs");
        }
        for (const auto &p : perms_) {
            if (p.size() != perms_[0].size()) {
                throw InvalidArgument("bank permutations must share one degree");
            }
        }
        inverses_.reserve(perms_.size());
        for (const auto &p : perms_) {
            inverses_.push_back(p.inverse());
        }
    }

    size_t M() const { return perms_.size(); }
    size_t N() const { return perms_[0].size(); }
    const Permutation &operator[](size_t j) const { return perms_[j]; }
    const std::vector<Permutation> &perms() const { return perms_; }
    const std::vector<Permutation> &inverses() const { return inverses_; }

   private:
    std::vector<Permutation> perms_;
    std::vector<Permutation> inverses_;
};

/// Constraints sigma_j(sources[i]) = sinks[i] for every i.
struct SearchTarget {
    std::vector<size_t> sources;
    std::vector<size_t> sinks;

    SearchTarget(std::vector<size_t> src, std::vector<size_t> dst) : sources(std::move(src)), sinks(std::move(dst)) {
        if (sources.empty() || sources.size() != sinks.size()) {
            throw InvalidArgument("search target needs equal, non-zero source and sink arity");
        }
    }

    static SearchTarget single(size_t x0, size_t y0) { return {{x0}, {y0}}; }

    size_t arity() const { return sources.size(); }

    void check(size_t N) const {
        for (size_t i = 0; i < arity(); i++) {
            if (sources[i] >= N || sinks[i] >= N) {
                throw InvalidArgument("target element out of range");
            }
            for (size_t k = 0; k < i; k++) {
                if ((sources[i] == sources[k]) != (sinks[i] == sinks[k])) {
                    throw InvalidArgument("target constraints are inconsistent with a bijection");
                }
            }
        }
    }

    bool satisfied_by(const Permutation &p) const {
        for (size_t i = 0; i < arity(); i++) {
            if (p(sources[i]) != sinks[i]) {
                return false;
            }
        }
        return true;
    }
};

/// Classical linear scan: every j satisfying the target.
inline std::vector<size_t> classical_scan(const ProgramBank &bank, const SearchTarget &target) {
    std::vector<size_t> out;
    for (size_t j = 0; j < bank.M(); j++) {
        if (target.satisfied_by(bank[j])) {
            out.push_back(j);
        }
    }
    return out;
}

/// The search register and its operators for arity n: wires 0..n-1 are program
/// copies S_1..S_n (dimension M), wires n..2n-1 are data copies X_1..X_n
/// (dimension N). V^{(x)n} drives X_i by S_i.
class ProgramSearchCircuit {
   public:
    ProgramSearchCircuit(const ProgramBank &bank, SearchTarget target)
        : bank_(&bank), target_(std::move(target)), layout_(make_layout(bank, target_.arity())) {
        target_.check(bank.N());
        const size_t n = arity();
        // |W> (x) |sources>: correlated program copies, data wires at the sources.
        axis_ = StateVector::zeros(layout_);
        const double a = 1.0 / std::sqrt(static_cast<double>(bank.M()));
        std::vector<size_t> digits(2 * n);
        for (size_t i = 0; i < n; i++) {
            digits[n + i] = target_.sources[i];
        }
        for (size_t j = 0; j < bank.M(); j++) {
            std::fill(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(n), j);
            axis_[layout_.encode(digits)] = a;
        }
        for (size_t i = 0; i < layout_.total_dim(); i++) {
            bool hit = true;
            for (size_t k = 0; k < n && hit; k++) {
                hit = layout_.digit(i, n + k) == target_.sinks[k];
            }
            if (hit) {
                marked_.push_back(i);
            }
        }
    }

    size_t arity() const { return target_.arity(); }
    const RegisterLayout &layout() const { return layout_; }
    const SearchTarget &target() const { return target_; }
    const ProgramBank &bank() const { return *bank_; }
    /// |Psi_in> = |W>|sources>, before the first V.
    const StateVector &initial() const { return axis_; }
    const std::vector<size_t> &marked() const { return marked_; }

    /// V^{(x)n} or its inverse; counts as `arity` processor applications.
    void apply_v(StateVector &s, bool inverse = false) const {
        const auto &tables = inverse ? bank_->inverses() : bank_->perms();
        for (size_t k = 0; k < arity(); k++) {
            s.apply_controlled(k, arity() + k, tables);
        }
    }

    /// Q = -V (I - 2|Psi_in><Psi_in|) V^-1 (I - 2 I_S (x) P_sinks).
    void apply_q(StateVector &s) const {
        s.reflect_about_marked(marked_);
        apply_v(s, true);
        s.reflect_about_state(axis_);
        apply_v(s, false);
        s.negate();
    }

    /// Q^-1 = -(I - 2 I_S (x) P_sinks) V (I - 2|Psi_in><Psi_in|) V^-1.
    void apply_q_inverse(StateVector &s) const {
        apply_v(s, true);
        s.reflect_about_state(axis_);
        apply_v(s, false);
        s.reflect_about_marked(marked_);
        s.negate();
    }

    /// V|Psi_in>, the state the iteration starts from.
    StateVector start() const {
        auto s = axis_;
        apply_v(s, false);
        return s;
    }

    double success(const StateVector &s) const {
        double p = 0;
        for (size_t i : marked_) {
            p += std::norm(s[i]);
        }
        return p;
    }

    std::vector<size_t> program_wires() const {
        std::vector<size_t> w(arity());
        for (size_t k = 0; k < w.size(); k++) {
            w[k] = k;
        }
        return w;
    }

   private:
    static RegisterLayout make_layout(const ProgramBank &bank, size_t n) {
        std::vector<size_t> dims(n, bank.M());
        dims.insert(dims.end(), n, bank.N());
        return RegisterLayout(std::move(dims));
    }

    const ProgramBank *bank_;
    SearchTarget target_;
    RegisterLayout layout_;
    StateVector axis_;
    std::vector<size_t> marked_;
};

struct ProgramSearchOptions {
    /// Assumed number of satisfying programs.
    size_t expected_t = 1;
    /// Verify-and-retry budget; absence is reported once it is spent.
    size_t max_attempts = 3;
    /// Double the assumed t after each failed verification (for an unknown count).
    bool double_t_on_retry = true;
    uint64_t seed = 0;
    /// Fixed iteration count instead of n_star (used for success-vs-k sweeps).
    std::optional<size_t> iterations;
};

struct ProgramSearchResult {
    std::optional<size_t> j;
    bool verified = false;
    GroverGeometry geometry;
    GroverTrace trace;
    /// Probability of a satisfying outcome in the last attempt's final state.
    double success_probability = 0;
    /// Whether all program-wire copies agreed in every measurement taken.
    bool copies_agree = true;
    /// V and V^-1 applications (one per copy) across all attempts.
    size_t oracle_calls_quantum = 0;
    /// Classical sigma_j evaluations used for verification.
    size_t oracle_calls_classical = 0;
};

/// Grover search over the programs of `bank`: start from V|W>|sources>, apply Q
/// n_star times, measure the program wires and verify the outcome classically.
inline ProgramSearchResult program_search(const ProgramBank &bank, const SearchTarget &target,
                                          const ProgramSearchOptions &opts = {}) {
    if (opts.expected_t == 0 || opts.max_attempts == 0) {
        throw InvalidArgument("program_search needs expected_t >= 1 and max_attempts >= 1");
    }
    ProgramSearchCircuit circuit(bank, target);
    const auto wires = circuit.program_wires();
    Rng rng(opts.seed);
    ProgramSearchResult out;
    std::optional<size_t> simulated_t;  // the circuit is deterministic for a fixed t
    StateVector state;

    size_t t = std::min(opts.expected_t, bank.M());
    for (size_t attempt = 1; attempt <= opts.max_attempts; attempt++) {
        out.geometry = GroverGeometry::make(bank.M(), t, 1);
        if (opts.iterations) {
            out.geometry.n_star = *opts.iterations;
        }
        if (simulated_t != t) {
            state = circuit.start();
            out.trace = GroverTrace{out.geometry.n_star, {circuit.success(state)}, 0};
            for (size_t k = 0; k < out.geometry.n_star; k++) {
                circuit.apply_q(state);
                out.trace.success.push_back(circuit.success(state));
            }
            simulated_t = t;
        }
        out.success_probability = out.trace.final_success();
        out.oracle_calls_quantum += circuit.arity() * (1 + 2 * out.geometry.n_star);

        const auto outcome = state.sample(wires, rng);
        for (size_t d : outcome) {
            out.copies_agree = out.copies_agree && d == outcome[0];
        }
        const size_t j = outcome[0];
        out.oracle_calls_classical += target.arity();
        out.trace.attempts = attempt;
        if (target.satisfied_by(bank[j])) {
            out.j = j;
            out.verified = true;
            return out;
        }
        if (opts.double_t_on_retry) {
            t = std::min(2 * t, bank.M());
        }
    }
    return out;
}

/// Arity-2 search on (M, M, N, N): find sigma_j with sigma_j(x0)=y0 and sigma_j(x1)=y1.
inline ProgramSearchResult tuple_program_search(const ProgramBank &bank, const SearchTarget &target,
                                                const ProgramSearchOptions &opts = {}) {
    if (target.arity() != 2) {
        throw InvalidArgument("tuple_program_search expects a pair target");
    }
    return program_search(bank, target, opts);
}

struct ProgramAmplitudes {
    double solution = 0;
    double other = 0;
};

/// Coefficients of V^-1 Q V|Psi_in> on |j>|x0>: the solution program and the
/// common value on every other program. Throws VerificationError if the state
/// leaves the |.>|x0> slice or the off-solution values differ by > 1e-12.
inline ProgramAmplitudes one_iteration_check(const ProgramBank &bank, const SearchTarget &target) {
    if (target.arity() != 1) {
        throw InvalidArgument("one_iteration_check expects a single-pair target");
    }
    const auto solutions = classical_scan(bank, target);
    if (solutions.size() != 1) {
        throw InvalidArgument("one_iteration_check needs exactly one satisfying program");
    }
    ProgramSearchCircuit circuit(bank, target);
    auto state = circuit.start();
    circuit.apply_q(state);
    circuit.apply_v(state, true);

    const size_t N = bank.N(), x0 = target.sources[0];
    ProgramAmplitudes out;
    std::optional<amp_t> other;
    for (size_t i = 0; i < state.size(); i++) {
        const size_t j = i / N, x = i % N;
        if (x != x0) {
            if (std::abs(state[i]) > 1e-12) {
                throw VerificationError("amplitude leaked off the |x0> slice");
            }
            continue;
        }
        if (j == solutions[0]) {
            out.solution = state[i].real();
        } else if (!other) {
            other = state[i];
        } else if (std::abs(state[i] - *other) > 1e-12) {
            throw VerificationError("off-solution amplitudes are not uniform");
        }
    }
    out.other = other ? other->real() : 0.0;
    return out;
}

/// The bank of all inner automorphisms of g, indexed by conjugating element.
inline ProgramBank inner_automorphism_bank(const FiniteGroup &g) {
    std::vector<Permutation> perms;
    perms.reserve(g.order());
    for (size_t h = 0; h < g.order(); h++) {
        perms.push_back(inner_automorphism(g, h));
    }
    return ProgramBank(std::move(perms));
}

struct ConjugacyOptions {
    uint64_t seed = 0;
    /// Use the classically known centralizer order as the marked count when
    /// g1 and g2 are conjugate. Otherwise assume t = 1 and double on retry.
    bool verification_mode = true;
    /// Retry budget when the marked count is known. Marked fractions of 1/2
    /// (e.g. in D_4) cap a single run at success 0.5.
    size_t known_t_attempts = 32;
    size_t unknown_t_attempts = 3;
};

struct ConjugacyResult {
    std::optional<size_t> conjugator;
    ProgramSearchResult search;
};

/// Searches the inner-automorphism bank for h with h g2 h^-1 = g1.
inline ConjugacyResult conjugacy_search(const FiniteGroup &g, size_t g1, size_t g2, const ConjugacyOptions &opts = {}) {
    if (g1 >= g.order() || g2 >= g.order()) {
        throw InvalidArgument("conjugacy_search: element index out of range");
    }
    const auto bank = inner_automorphism_bank(g);
    ProgramSearchOptions po;
    po.seed = opts.seed;
    if (opts.verification_mode && conjugacy_oracle(g, g1, g2)) {
        po.expected_t = centralizer_order(g, g2);
        po.max_attempts = opts.known_t_attempts;
        po.double_t_on_retry = false;
    } else {
        po.expected_t = 1;
        po.max_attempts = opts.unknown_t_attempts;
        po.double_t_on_retry = true;
    }
    ConjugacyResult out;
    out.search = program_search(bank, SearchTarget::single(g2, g1), po);
    if (out.search.verified) {
        const size_t h = *out.search.j;
        if (g.mul(g.mul(h, g2), g.inverse(h)) != g1) {
            throw VerificationError("conjugator failed the Cayley-table check");
        }
        out.conjugator = h;
    }
    return out;
}

/// Random bank with exactly one program satisfying `target`, at `solution`.
inline ProgramBank random_bank(size_t M, size_t N, const SearchTarget &target, size_t solution, Rng &rng) {
    if (M < 2 || N < 2) {
        throw InvalidArgument("random bank needs M >= 2 and N >= 2");
    }
    if (solution >= M) {
        throw InvalidArgument("solution index out of range");
    }
    target.check(N);
    std::vector<Permutation> perms;
    perms.reserve(M);
    for (size_t j = 0; j < M; j++) {
        auto images = random_permutation(N, rng).images();
        auto force = [&](size_t x, size_t y) {
            auto z = static_cast<size_t>(std::find(images.begin(), images.end(), y) - images.begin());
            std::swap(images[x], images[z]);
        };
        if (j == solution) {
            for (size_t i = 0; i < target.arity(); i++) {
                force(target.sources[i], target.sinks[i]);
            }
        } else if (target.satisfied_by(Permutation(images))) {
            // Break the first constraint by swapping x0's image with another point's.
            const size_t x0 = target.sources[0];
            size_t w = static_cast<size_t>(rng.below(N - 1));
            if (w >= x0) {
                w++;
            }
            std::swap(images[x0], images[w]);
        }
        perms.emplace_back(std::move(images));
    }
    return ProgramBank(std::move(perms));
}

/// M lines, each one permutation image row. Throws ParseError.
inline ProgramBank parse_bank(std::istream &in) {
    std::vector<Permutation> perms;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            perms.push_back(parse_permutation(line, perms.empty() ? 0 : perms[0].size()));
        } catch (const ParseError &e) {
            throw ParseError("bank line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    try {
        return ProgramBank(std::move(perms));
    } catch (const InvalidArgument &e) {
        throw ParseError(e.what());
    }
}

inline ProgramBank load_bank(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    return parse_bank(in);
}

}  // namespace qperm
