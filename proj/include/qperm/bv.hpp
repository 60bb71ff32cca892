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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "qperm/errors.hpp"
#include "qperm/modular.hpp"
#include "qperm/state_vector.hpp"

namespace qperm {

/// One-query identification of a hidden homomorphism Z_{p-1}^m -> Aut(Z_p).
///
/// Register: m program wires of dimension p-1 (wire k carries n_{k+1}), then a
/// single data wire of dimension p. The data wire is prepared in the common
/// eigenvector |u_{j0}> of every multiplication-by-k gate, so each controlled
/// power kicks a phase exp(2 pi i y_k n_k / (p-1)) back onto its control wire.
/// An inverse DFT per program wire then reads out y exactly.
struct BVInstance {
    uint64_t p;
    HiddenHomomorphism hidden;
    uint64_t j0;

    explicit BVInstance(HiddenHomomorphism h, std::optional<uint64_t> generator = {})
        : p(h.modulus()), hidden(std::move(h)), j0(generator ? *generator : find_generator(p)) {
        if (!is_generator(j0, p)) {
            throw InvalidArgument("j0 = " + std::to_string(j0) + " is not a generator mod " + std::to_string(p));
        }
    }

    size_t m() const { return hidden.wires(); }
    size_t data_wire() const { return hidden.wires(); }

    RegisterLayout layout() const {
        std::vector<size_t> dims(m(), static_cast<size_t>(p - 1));
        dims.push_back(static_cast<size_t>(p));
        return RegisterLayout(std::move(dims));
    }
};

struct BVResult {
    ExponentVector y;
    std::vector<ExponentVector> kernel;
    /// Multipliers of the image subgroup of Aut(Z_p), ascending.
    std::vector<uint64_t> image;
    size_t oracle_uses = 0;
    double peak_probability = 0;
};

/// |u_{j0}> = (p-1)^{-1/2} sum_{n'} exp(-2 pi i n' / (p-1)) |j0^{n'} mod p>, on a
/// single p-dimensional wire. Digit 0 carries no amplitude.
inline StateVector build_eigenvector(uint64_t p, uint64_t j0) {
    if (!is_generator(j0, p)) {
        throw InvalidArgument("build_eigenvector: j0 is not a generator mod p");
    }
    auto s = StateVector::zeros(RegisterLayout({static_cast<size_t>(p)}));
    const double d = static_cast<double>(p - 1);
    const double a = 1.0 / std::sqrt(d);
    uint64_t x = 1;
    for (uint64_t n = 0; n + 1 < p; n++) {
        s[x] = std::polar(a, -2.0 * std::numbers::pi * static_cast<double>(n) / d);
        x = mul_mod(x, j0, p);
    }
    return s;
}

/// State after the m controlled powers and the per-wire inverse DFT, just
/// before the program register is measured.
inline StateVector bv_output_state(const BVInstance &inst) {
    auto program = uniform_state(RegisterLayout(std::vector<size_t>(inst.m(), inst.p - 1)));
    auto state = kron(program, build_eigenvector(inst.p, inst.j0));
    for (size_t k = 0; k < inst.m(); k++) {
        state.apply_controlled_power(k, inst.data_wire(), inst.hidden.automorphism(k).as_permutation());
    }
    for (size_t k = 0; k < inst.m(); k++) {
        state.fourier(k, -1);
    }
    return state;
}

/// All n with y . n = 0 mod (p-1), lexicographically sorted.
inline std::vector<ExponentVector> recover_kernel(const ExponentVector &y, uint64_t p, size_t m) {
    if (y.size() != m || y.order != p - 1) {
        throw InvalidArgument("recover_kernel: y is not in Z_{p-1}^m");
    }
    for (auto e : y.entries) {
        if (e >= p - 1) {
            throw InvalidArgument("recover_kernel: y entry out of range");
        }
    }
    std::vector<ExponentVector> out;
    for (auto &n : enumerate_exponents(p - 1, m)) {
        if (y.dot(n) == 0) {
            out.push_back(std::move(n));
        }
    }
    return out;
}

/// Image of f: the subgroup of Aut(Z_p) generated by j0^{y_k}, i.e. the powers
/// of j0^{gcd(y_1, ..., y_m, p-1)}.
inline std::vector<uint64_t> recover_image(const ExponentVector &y, uint64_t p, uint64_t j0) {
    uint64_t g = p - 1;
    for (auto e : y.entries) {
        g = std::gcd(g, e);
    }
    std::set<uint64_t> image;
    const uint64_t step = pow_mod(j0, g, p);
    uint64_t x = 1;
    do {
        image.insert(x);
        x = mul_mod(x, step, p);
    } while (x != 1);
    return {image.begin(), image.end()};
}

/// Runs the circuit once and reads y from the most likely outcome. Throws
/// VerificationError if the outcome is not a point mass to within 1e-9.
inline BVResult run_bv(const BVInstance &inst) {
    const auto state = bv_output_state(inst);
    std::vector<size_t> program_wires(inst.m());
    std::iota(program_wires.begin(), program_wires.end(), size_t{0});
    const auto dist = state.measure_distribution(program_wires);
    const size_t peak = dist.argmax();

    BVResult out;
    out.peak_probability = dist.probs[peak];
    if (out.peak_probability < 1.0 - 1e-9) {
        throw VerificationError("BV readout is not deterministic: peak probability " +
                                std::to_string(out.peak_probability));
    }
    out.y.order = inst.p - 1;
    for (size_t d : dist.layout.decode(peak)) {
        out.y.entries.push_back(d);
    }
    out.oracle_uses = 1;
    out.kernel = recover_kernel(out.y, inst.p, inst.m());
    out.image = recover_image(out.y, inst.p, inst.j0);
    return out;
}

}  // namespace qperm
