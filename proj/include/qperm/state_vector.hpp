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
#include <complex>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <span>
#include <string>
#include <vector>

#include "qperm/errors.hpp"
#include "qperm/permutation.hpp"
#include "qperm/rng.hpp"

namespace qperm {

using amp_t = std::complex<double>;

/// Mixed-radix register of qudit wires. Wire 0 is the most significant digit
/// of the flat amplitude index; this ordering is used everywhere.
class RegisterLayout {
   public:
    RegisterLayout() = default;

    explicit RegisterLayout(std::vector<size_t> dims) : dims_(std::move(dims)) {
        if (dims_.empty()) {
            throw InvalidArgument("register layout needs at least one wire");
        }
        strides_.assign(dims_.size(), 1);
        total_ = 1;
        for (size_t w = dims_.size(); w-- > 0;) {
            if (dims_[w] < 2) {
                throw InvalidArgument("wire dimension must be >= 2");
            }
            strides_[w] = total_;
            total_ *= dims_[w];
        }
    }

    size_t wires() const { return dims_.size(); }
    size_t dim(size_t wire) const { return dims_.at(wire); }
    size_t stride(size_t wire) const { return strides_.at(wire); }
    size_t total_dim() const { return total_; }
    const std::vector<size_t> &dims() const { return dims_; }

    size_t digit(size_t index, size_t wire) const { return (index / strides_[wire]) % dims_[wire]; }

    size_t encode(std::span<const size_t> digits) const {
        if (digits.size() != dims_.size()) {
            throw InvalidArgument("digit tuple length does not match wire count");
        }
        size_t index = 0;
        for (size_t w = 0; w < dims_.size(); w++) {
            if (digits[w] >= dims_[w]) {
                throw InvalidArgument("digit " + std::to_string(digits[w]) + " out of range on wire " +
                                      std::to_string(w));
            }
            index += digits[w] * strides_[w];
        }
        return index;
    }

    std::vector<size_t> decode(size_t index) const {
        std::vector<size_t> digits(dims_.size());
        for (size_t w = 0; w < dims_.size(); w++) {
            digits[w] = digit(index, w);
        }
        return digits;
    }

    /// Concatenation: this register's wires followed by `other`'s.
    RegisterLayout concat(const RegisterLayout &other) const {
        auto d = dims_;
        d.insert(d.end(), other.dims_.begin(), other.dims_.end());
        return RegisterLayout(std::move(d));
    }

    void check_wire(size_t wire) const {
        if (wire >= dims_.size()) {
            throw InvalidArgument("wire " + std::to_string(wire) + " out of range");
        }
    }

    bool operator==(const RegisterLayout &other) const { return dims_ == other.dims_; }

   private:
    std::vector<size_t> dims_;
    std::vector<size_t> strides_;
    size_t total_ = 0;
};

/// Marginal outcome probabilities over a subset of wires. Outcomes are indexed
/// mixed-radix over the selected wires, in the order given.
struct Distribution {
    std::vector<size_t> wires;
    RegisterLayout layout;
    std::vector<double> probs;

    double prob(std::span<const size_t> digits) const { return probs[layout.encode(digits)]; }

    size_t argmax() const {
        size_t best = 0;
        for (size_t k = 1; k < probs.size(); k++) {
            if (probs[k] > probs[best]) {
                best = k;
            }
        }
        return best;
    }

    double total() const {
        double s = 0;
        for (double p : probs) {
            s += p;
        }
        return s;
    }
};

/// Dense complex amplitudes over a RegisterLayout. Gates act in place.
class StateVector {
   public:
    StateVector() = default;
    StateVector(RegisterLayout layout, std::vector<amp_t> amps) : layout_(std::move(layout)), amps_(std::move(amps)) {
        if (amps_.size() != layout_.total_dim()) {
            throw InvalidArgument("amplitude count does not match layout");
        }
    }

    static StateVector zeros(RegisterLayout layout) {
        std::vector<amp_t> a(layout.total_dim());
        return {std::move(layout), std::move(a)};
    }

    const RegisterLayout &layout() const { return layout_; }
    size_t size() const { return amps_.size(); }
    std::span<const amp_t> amps() const { return amps_; }
    amp_t operator[](size_t i) const { return amps_[i]; }
    amp_t &operator[](size_t i) { return amps_[i]; }
    amp_t amp(std::span<const size_t> digits) const { return amps_[layout_.encode(digits)]; }

    double norm2() const {
        double s = 0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return s;
    }

    /// <this|other>
    amp_t inner(const StateVector &other) const {
        check_same_layout(other);
        amp_t s = 0;
        for (size_t i = 0; i < amps_.size(); i++) {
            s += std::conj(amps_[i]) * other.amps_[i];
        }
        return s;
    }

    void scale(amp_t factor) {
        for (auto &a : amps_) {
            a *= factor;
        }
    }

    /// Global -1; kept explicit so operators such as -U_w U_id match sign for sign.
    void negate() { scale(-1.0); }

    /// Moves the amplitude at digit l on `wire` to digit table(l).
    void apply_permutation(size_t wire, const Permutation &table) {
        layout_.check_wire(wire);
        if (table.size() != layout_.dim(wire)) {
            throw InvalidArgument("permutation size does not match wire dimension");
        }
        const size_t s = layout_.stride(wire);
        const size_t d = layout_.dim(wire);
        std::vector<amp_t> out(amps_.size());
        for (size_t i = 0; i < amps_.size(); i++) {
            const size_t l = (i / s) % d;
            out[i + (table(l) - l) * s] = amps_[i];
        }
        amps_ = std::move(out);
    }

    /// |n>_control |l>_target -> |n>_control |tables[n](l)>_target.
    /// This is the programmable-processor operator V when tables is a bank.
    void apply_controlled(size_t control, size_t target, std::span<const Permutation> tables) {
        layout_.check_wire(control);
        layout_.check_wire(target);
        if (control == target) {
            throw InvalidArgument("control and target wires must differ");
        }
        const size_t dc = layout_.dim(control), sc = layout_.stride(control);
        const size_t dt = layout_.dim(target), st = layout_.stride(target);
        if (tables.size() != dc) {
            throw InvalidArgument("need one permutation per control digit");
        }
        for (const auto &t : tables) {
            if (t.size() != dt) {
                throw InvalidArgument("permutation size does not match target dimension");
            }
        }
        std::vector<amp_t> out(amps_.size());
        for (size_t i = 0; i < amps_.size(); i++) {
            const size_t n = (i / sc) % dc;
            const size_t l = (i / st) % dt;
            out[i + (tables[n](l) - l) * st] = amps_[i];
        }
        amps_ = std::move(out);
    }

    /// |n>_control |l>_target -> |n>_control |base^n(l)>_target.
    void apply_controlled_power(size_t control, size_t target, const Permutation &base) {
        layout_.check_wire(control);
        if (control == target) {
            throw InvalidArgument("control and target wires must differ");
        }
        std::vector<Permutation> powers;
        powers.reserve(layout_.dim(control));
        powers.push_back(Permutation::identity(base.size()));
        for (size_t n = 1; n < layout_.dim(control); n++) {
            powers.push_back(compose(base, powers.back()));
        }
        apply_controlled(control, target, powers);
    }

    /// I - 2|axis><axis|, applied as one inner product and one axpy.
    void reflect_about_state(const StateVector &axis) {
        check_same_layout(axis);
        if (std::abs(axis.norm2() - 1.0) > 1e-8) {
            throw InvalidArgument("reflection axis is not normalized");
        }
        const amp_t c = 2.0 * axis.inner(*this);
        for (size_t i = 0; i < amps_.size(); i++) {
            amps_[i] -= c * axis.amps_[i];
        }
    }

    /// I - 2P for the projector onto the given basis indices.
    void reflect_about_marked(std::span<const size_t> marked) {
        std::vector<bool> hit(amps_.size(), false);
        for (size_t i : marked) {
            if (i >= amps_.size()) {
                throw InvalidArgument("marked index out of range");
            }
            hit[i] = true;
        }
        for (size_t i = 0; i < amps_.size(); i++) {
            if (hit[i]) {
                amps_[i] = -amps_[i];
            }
        }
    }

    /// DFT over Z_d on one wire: |n> -> d^{-1/2} sum_r exp(sign 2 pi i r n / d) |r>.
    void fourier(size_t wire, int sign) {
        layout_.check_wire(wire);
        if (sign != 1 && sign != -1) {
            throw InvalidArgument("fourier sign must be +1 or -1");
        }
        const size_t d = layout_.dim(wire), s = layout_.stride(wire);
        const double scale = 1.0 / std::sqrt(static_cast<double>(d));
        std::vector<amp_t> roots(d);
        for (size_t k = 0; k < d; k++) {
            roots[k] = std::polar(scale, sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d));
        }
        std::vector<amp_t> out(amps_.size());
        const size_t block = d * s;
        for (size_t hi = 0; hi < amps_.size(); hi += block) {
            for (size_t lo = 0; lo < s; lo++) {
                const size_t base = hi + lo;
                for (size_t r = 0; r < d; r++) {
                    amp_t acc = 0;
                    for (size_t n = 0; n < d; n++) {
                        acc += roots[(r * n) % d] * amps_[base + n * s];
                    }
                    out[base + r * s] = acc;
                }
            }
        }
        amps_ = std::move(out);
    }

    Distribution measure_distribution(std::span<const size_t> wires) const {
        std::vector<size_t> sub_dims;
        for (size_t w : wires) {
            layout_.check_wire(w);
            sub_dims.push_back(layout_.dim(w));
        }
        Distribution out{{wires.begin(), wires.end()}, RegisterLayout(sub_dims), {}};
        out.probs.assign(out.layout.total_dim(), 0.0);
        for (size_t i = 0; i < amps_.size(); i++) {
            size_t k = 0;
            for (size_t j = 0; j < wires.size(); j++) {
                k += layout_.digit(i, wires[j]) * out.layout.stride(j);
            }
            out.probs[k] += std::norm(amps_[i]);
        }
        return out;
    }

    /// Draws one outcome on `wires` from the Born distribution.
    std::vector<size_t> sample(std::span<const size_t> wires, Rng &rng) const {
        auto dist = measure_distribution(wires);
        double u = rng.unit() * dist.total();
        size_t last_nonzero = 0;
        for (size_t k = 0; k < dist.probs.size(); k++) {
            if (dist.probs[k] > 0) {
                last_nonzero = k;
            }
            u -= dist.probs[k];
            if (u < 0 && dist.probs[k] > 0) {
                return dist.layout.decode(k);
            }
        }
        return dist.layout.decode(last_nonzero);
    }

    std::vector<size_t> sample(std::span<const size_t> wires, uint64_t seed) const {
        Rng rng(seed);
        return sample(wires, rng);
    }

    /// CSV rows "index,digits,real,imag" for amplitudes with |a| > threshold.
    /// Digits are joined with ':' (wire 0 first).
    std::string dump_csv(double threshold = 0.0) const {
        std::ostringstream ss;
        ss << "index,digits,real,imag\n" << std::setprecision(17);
        for (size_t i = 0; i < amps_.size(); i++) {
            if (std::abs(amps_[i]) <= threshold) {
                continue;
            }
            ss << i << ",";
            auto digits = layout_.decode(i);
            for (size_t w = 0; w < digits.size(); w++) {
                ss << (w ? ":" : "") << digits[w];
            }
            ss << "," << amps_[i].real() << "," << amps_[i].imag() << "\n";
        }
        return ss.str();
    }

   private:
    void check_same_layout(const StateVector &other) const {
        if (!(layout_ == other.layout_)) {
            throw InvalidArgument("state layouts differ");
        }
    }

    RegisterLayout layout_;
    std::vector<amp_t> amps_;
};

inline StateVector basis_state(const RegisterLayout &layout, std::span<const size_t> digits) {
    auto s = StateVector::zeros(layout);
    s[layout.encode(digits)] = 1.0;
    return s;
}

/// Equal superposition over `selected` wires; every other wire is held at
/// fixed_digits[w]. fixed_digits may be empty when every wire is selected.
inline StateVector uniform_state(const RegisterLayout &layout, std::span<const size_t> selected,
                                 std::span<const size_t> fixed_digits = {}) {
    std::vector<bool> is_selected(layout.wires(), false);
    size_t count = 1;
    for (size_t w : selected) {
        layout.check_wire(w);
        if (!is_selected[w]) {
            is_selected[w] = true;
            count *= layout.dim(w);
        }
    }
    for (size_t w = 0; w < layout.wires(); w++) {
        if (!is_selected[w] && (w >= fixed_digits.size() || fixed_digits[w] >= layout.dim(w))) {
            throw InvalidArgument("uniform_state: missing or out-of-range digit for fixed wire " + std::to_string(w));
        }
    }
    const double a = 1.0 / std::sqrt(static_cast<double>(count));
    auto s = StateVector::zeros(layout);
    for (size_t i = 0; i < s.size(); i++) {
        bool on = true;
        for (size_t w = 0; w < layout.wires() && on; w++) {
            on = is_selected[w] || layout.digit(i, w) == fixed_digits[w];
        }
        if (on) {
            s[i] = a;
        }
    }
    return s;
}

inline StateVector uniform_state(const RegisterLayout &layout) {
    std::vector<size_t> all(layout.wires());
    for (size_t w = 0; w < all.size(); w++) {
        all[w] = w;
    }
    return uniform_state(layout, all);
}

/// N^{-1/2} sum_s |s>|s> on a two-wire (N, N) layout.
inline StateVector entangled_uniform(const RegisterLayout &layout) {
    if (layout.wires() != 2 || layout.dim(0) != layout.dim(1)) {
        throw InvalidArgument("entangled_uniform needs two wires of equal dimension");
    }
    const size_t n = layout.dim(0);
    auto s = StateVector::zeros(layout);
    const double a = 1.0 / std::sqrt(static_cast<double>(n));
    for (size_t k = 0; k < n; k++) {
        s[k * n + k] = a;
    }
    return s;
}

/// Tensor product; the result's wires are a's followed by b's.
inline StateVector kron(const StateVector &a, const StateVector &b) {
    auto out = StateVector::zeros(a.layout().concat(b.layout()));
    for (size_t i = 0; i < a.size(); i++) {
        for (size_t j = 0; j < b.size(); j++) {
            out[i * b.size() + j] = a[i] * b[j];
        }
    }
    return out;
}

/// Flat indices whose digits on wires a and b agree (the support of P_id).
inline std::vector<size_t> diagonal_indices(const RegisterLayout &layout, size_t wire_a, size_t wire_b) {
    std::vector<size_t> out;
    for (size_t i = 0; i < layout.total_dim(); i++) {
        if (layout.digit(i, wire_a) == layout.digit(i, wire_b)) {
            out.push_back(i);
        }
    }
    return out;
}

/// Flat indices whose digit on `wire` equals `value`.
inline std::vector<size_t> indices_with_digit(const RegisterLayout &layout, size_t wire, size_t value) {
    std::vector<size_t> out;
    for (size_t i = 0; i < layout.total_dim(); i++) {
        if (layout.digit(i, wire) == value) {
            out.push_back(i);
        }
    }
    return out;
}

}  // namespace qperm
