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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qperm/errors.hpp"
#include "qperm/permutation.hpp"

namespace qperm {

/// Trial division; moduli here are desk-scale.
inline bool is_prime(uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (uint64_t d = 2; d * d <= n; d++) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

inline void require_prime(uint64_t p) {
    if (!is_prime(p)) {
        throw InvalidArgument(std::to_string(p) + " is not prime");
    }
}

inline uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline uint64_t pow_mod(uint64_t base, uint64_t e, uint64_t p) {
    uint64_t result = 1 % p;
    base %= p;
    while (e) {
        if (e & 1) {
            result = mul_mod(result, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    return result;
}

/// Smallest t >= 1 with k^t = 1 (mod p).
inline uint64_t multiplicative_order(uint64_t k, uint64_t p) {
    require_prime(p);
    if (k % p == 0) {
        throw InvalidArgument("multiplicative_order: k is 0 mod p");
    }
    uint64_t t = 1;
    for (uint64_t x = k % p; x != 1; x = mul_mod(x, k, p)) {
        t++;
    }
    return t;
}

inline bool is_generator(uint64_t k, uint64_t p) {
    return k % p != 0 && multiplicative_order(k, p) == p - 1;
}

/// Smallest primitive root mod p (order exactly p-1). Note that this is not the
/// same as "k does not divide p-1": 2 mod 7 has order 3.
inline uint64_t find_generator(uint64_t p) {
    require_prime(p);
    if (p < 3) {
        throw InvalidArgument("find_generator needs p >= 3");
    }
    for (uint64_t k = 2; k < p; k++) {
        if (multiplicative_order(k, p) == p - 1) {
            return k;
        }
    }
    throw InvalidArgument("no generator found");  // unreachable for prime p
}

/// The unique s in {0..p-2} with base^s = target (mod p), by exhaustive scan.
inline uint64_t discrete_log(uint64_t base, uint64_t target, uint64_t p) {
    if (!is_generator(base, p)) {
        throw InvalidArgument("discrete_log: " + std::to_string(base) + " is not a generator mod " +
                              std::to_string(p));
    }
    if (target == 0 || target >= p) {
        throw InvalidArgument("discrete_log: target out of range");
    }
    uint64_t x = 1;
    for (uint64_t s = 0; s + 1 < p; s++) {
        if (x == target) {
            return s;
        }
        x = mul_mod(x, base, p);
    }
    throw InvalidArgument("discrete_log: no solution");  // unreachable for a generator
}

/// The automorphism of Z_p sending 1 to `multiplier`; it acts as n -> n*k mod p.
class ModAutomorphism {
   public:
    ModAutomorphism(uint64_t modulus, uint64_t multiplier) : modulus_(modulus), multiplier_(multiplier) {
        require_prime(modulus);
        if (multiplier == 0 || multiplier >= modulus) {
            throw InvalidArgument("automorphism multiplier must lie in 1..p-1");
        }
    }

    uint64_t modulus() const { return modulus_; }
    uint64_t multiplier() const { return multiplier_; }

    uint64_t operator()(uint64_t n) const { return mul_mod(n % modulus_, multiplier_, modulus_); }

    ModAutomorphism pow(uint64_t e) const { return {modulus_, pow_mod(multiplier_, e, modulus_)}; }

    /// Image table on all p elements; 0 is always fixed.
    Permutation as_permutation() const {
        std::vector<size_t> images(modulus_);
        for (uint64_t n = 0; n < modulus_; n++) {
            images[n] = static_cast<size_t>((*this)(n));
        }
        return Permutation(std::move(images));
    }

    bool is_identity() const { return multiplier_ == 1; }
    bool operator==(const ModAutomorphism &) const = default;

   private:
    uint64_t modulus_;
    uint64_t multiplier_;
};

/// Composition in Aut(Z_p); a(b(n)) has multiplier a.k * b.k.
inline ModAutomorphism compose(const ModAutomorphism &a, const ModAutomorphism &b) {
    if (a.modulus() != b.modulus()) {
        throw InvalidArgument("compose: moduli differ");
    }
    return {a.modulus(), mul_mod(a.multiplier(), b.multiplier(), a.modulus())};
}

/// An element of Z_order^m. Used for program-register inputs, the hidden
/// exponent vector and readout labels.
struct ExponentVector {
    uint64_t order = 1;
    std::vector<uint64_t> entries;

    size_t size() const { return entries.size(); }
    uint64_t operator[](size_t k) const { return entries[k]; }

    uint64_t dot(const ExponentVector &other) const {
        if (other.order != order || other.size() != size()) {
            throw InvalidArgument("ExponentVector::dot: shape mismatch");
        }
        uint64_t acc = 0;
        for (size_t k = 0; k < entries.size(); k++) {
            acc = (acc + mul_mod(entries[k], other.entries[k], order)) % order;
        }
        return acc;
    }

    ExponentVector operator+(const ExponentVector &other) const {
        if (other.order != order || other.size() != size()) {
            throw InvalidArgument("ExponentVector::operator+: shape mismatch");
        }
        ExponentVector out{order, entries};
        for (size_t k = 0; k < entries.size(); k++) {
            out.entries[k] = (entries[k] + other.entries[k]) % order;
        }
        return out;
    }

    bool is_zero() const {
        for (auto e : entries) {
            if (e) {
                return false;
            }
        }
        return true;
    }

    bool operator==(const ExponentVector &) const = default;
    auto operator<=>(const ExponentVector &other) const { return entries <=> other.entries; }
};

/// Every element of Z_order^m in lexicographic order.
inline std::vector<ExponentVector> enumerate_exponents(uint64_t order, size_t m) {
    std::vector<ExponentVector> out;
    ExponentVector cur{order, std::vector<uint64_t>(m, 0)};
    while (true) {
        out.push_back(cur);
        size_t k = m;
        while (k > 0) {
            k--;
            if (++cur.entries[k] < order) {
                break;
            }
            cur.entries[k] = 0;
            if (k == 0) {
                return out;
            }
        }
        if (m == 0) {
            return out;
        }
    }
}

/// f : Z_{p-1}^m -> Aut(Z_p), (n_1..n_m) -> a_{j_m}^{n_m} ... a_{j_1}^{n_1}.
class HiddenHomomorphism {
   public:
    HiddenHomomorphism(uint64_t modulus, std::vector<uint64_t> multipliers)
        : modulus_(modulus), multipliers_(std::move(multipliers)) {
        require_prime(modulus_);
        if (multipliers_.empty()) {
            throw InvalidArgument("hidden homomorphism needs at least one wire");
        }
        for (auto j : multipliers_) {
            if (j == 0 || j >= modulus_) {
                throw InvalidArgument("hidden multiplier must lie in 1..p-1");
            }
        }
    }

    uint64_t modulus() const { return modulus_; }
    size_t wires() const { return multipliers_.size(); }
    const std::vector<uint64_t> &multipliers() const { return multipliers_; }
    ModAutomorphism automorphism(size_t k) const { return {modulus_, multipliers_[k]}; }

    ModAutomorphism evaluate(const ExponentVector &n) const {
        if (n.size() != multipliers_.size() || n.order != modulus_ - 1) {
            throw InvalidArgument("HiddenHomomorphism::evaluate: input not in Z_{p-1}^m");
        }
        uint64_t k = 1;
        for (size_t w = 0; w < multipliers_.size(); w++) {
            k = mul_mod(k, pow_mod(multipliers_[w], n[w], modulus_), modulus_);
        }
        return {modulus_, k};
    }

    static HiddenHomomorphism random(uint64_t p, size_t m, Rng &rng) {
        std::vector<uint64_t> js(m);
        for (auto &j : js) {
            j = 1 + rng.below(p - 1);
        }
        return {p, std::move(js)};
    }

   private:
    uint64_t modulus_;
    std::vector<uint64_t> multipliers_;
};

/// Black-box access to a hidden homomorphism: (n, l) -> f(n)(l), counting calls.
class HomomorphismOracle {
   public:
    explicit HomomorphismOracle(HiddenHomomorphism hidden) : hidden_(std::move(hidden)) {}

    uint64_t operator()(const ExponentVector &n, uint64_t l) {
        calls_++;
        return hidden_.evaluate(n)(l);
    }

    size_t calls() const { return calls_; }
    const HiddenHomomorphism &hidden() const { return hidden_; }

   private:
    HiddenHomomorphism hidden_;
    size_t calls_ = 0;
};

struct ClassicalBVResult {
    ExponentVector y;
    size_t oracle_uses = 0;
};

/// Classical baseline: probe each unit vector e_k with data input 1, read off
/// j_k = f(e_k)(1), then take its discrete log base j0. Uses m oracle calls.
inline ClassicalBVResult classical_bv(const HiddenHomomorphism &hidden, std::optional<uint64_t> j0 = {}) {
    const uint64_t p = hidden.modulus();
    const uint64_t base = j0 ? *j0 : find_generator(p);
    HomomorphismOracle oracle(hidden);
    ClassicalBVResult out;
    out.y.order = p - 1;
    for (size_t k = 0; k < hidden.wires(); k++) {
        ExponentVector probe{p - 1, std::vector<uint64_t>(hidden.wires(), 0)};
        probe.entries[k] = 1;
        out.y.entries.push_back(discrete_log(base, oracle(probe, 1), p));
    }
    out.oracle_uses = oracle.calls();
    return out;
}

}  // namespace qperm
