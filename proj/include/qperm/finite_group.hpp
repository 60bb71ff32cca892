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
#include <cstddef>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qperm/errors.hpp"
#include "qperm/permutation.hpp"

namespace qperm {

/// A finite group given by its Cayley table. Elements are indices 0..N-1 and
/// mul(a, b) is the product a*b.
class FiniteGroup {
   public:
    /// `cayley` is row-major N x N. Throws InvalidArgument unless the table
    /// defines a group (closure, identity, inverses, associativity).
    FiniteGroup(size_t order, std::vector<size_t> cayley) : order_(order), cayley_(std::move(cayley)) {
        if (order_ == 0 || cayley_.size() != order_ * order_) {
            throw InvalidArgument("Cayley table must be N x N with N >= 1");
        }
        for (size_t v : cayley_) {
            if (v >= order_) {
                throw InvalidArgument("Cayley table entry out of range");
            }
        }
        auto e = find_identity();
        if (!e) {
            throw InvalidArgument("Cayley table has no identity element");
        }
        identity_ = *e;
        inverse_.assign(order_, order_);
        for (size_t a = 0; a < order_; a++) {
            for (size_t b = 0; b < order_; b++) {
                if (mul(a, b) == identity_ && mul(b, a) == identity_) {
                    inverse_[a] = b;
                    break;
                }
            }
            if (inverse_[a] == order_) {
                throw InvalidArgument("element " + std::to_string(a) + " has no inverse");
            }
        }
        for (size_t a = 0; a < order_; a++) {
            for (size_t b = 0; b < order_; b++) {
                for (size_t c = 0; c < order_; c++) {
                    if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
                        throw InvalidArgument("Cayley table is not associative");
                    }
                }
            }
        }
    }

    size_t order() const { return order_; }
    size_t identity() const { return identity_; }
    size_t mul(size_t a, size_t b) const { return cayley_[a * order_ + b]; }
    size_t inverse(size_t a) const { return inverse_[a]; }
    const std::vector<size_t> &cayley() const { return cayley_; }

    bool is_abelian() const {
        for (size_t a = 0; a < order_; a++) {
            for (size_t b = a + 1; b < order_; b++) {
                if (mul(a, b) != mul(b, a)) {
                    return false;
                }
            }
        }
        return true;
    }

    /// Z_n under addition; element k is the residue k.
    static FiniteGroup cyclic(size_t n) {
        std::vector<size_t> t(n * n);
        for (size_t a = 0; a < n; a++) {
            for (size_t b = 0; b < n; b++) {
                t[a * n + b] = (a + b) % n;
            }
        }
        return {n, std::move(t)};
    }

    /// S_n for n <= 5. Elements are the permutations of n points in
    /// lexicographic order of their image tables (index 0 is the identity);
    /// the product a*b applies b first.
    static FiniteGroup symmetric(size_t n) {
        if (n == 0 || n > 5) {
            throw InvalidArgument("symmetric group supported for 1 <= n <= 5");
        }
        auto elems = symmetric_elements(n);
        const size_t N = elems.size();
        std::vector<size_t> t(N * N);
        for (size_t a = 0; a < N; a++) {
            for (size_t b = 0; b < N; b++) {
                auto c = compose(elems[a], elems[b]);
                t[a * N + b] = static_cast<size_t>(
                    std::lower_bound(elems.begin(), elems.end(), c.images(),
                                     [](const Permutation &x, const std::vector<size_t> &v) { return x.images() < v; }) -
                    elems.begin());
            }
        }
        return {N, std::move(t)};
    }

    static std::vector<Permutation> symmetric_elements(size_t n) {
        std::vector<size_t> images(n);
        std::iota(images.begin(), images.end(), size_t{0});
        std::vector<Permutation> out;
        do {
            out.emplace_back(images);
        } while (std::next_permutation(images.begin(), images.end()));
        return out;
    }

    /// D_n, the symmetries of the regular n-gon, order 2n. Element i + n*e is
    /// r^i s^e with s r s = r^{-1}.
    static FiniteGroup dihedral(size_t n) {
        if (n < 1) {
            throw InvalidArgument("dihedral group needs n >= 1");
        }
        const size_t N = 2 * n;
        std::vector<size_t> t(N * N);
        for (size_t a = 0; a < N; a++) {
            for (size_t b = 0; b < N; b++) {
                size_t i = a % n, e = a / n, j = b % n, f = b / n;
                // r^i s^e r^j s^f = r^(i + (-1)^e j) s^(e+f)
                size_t rot = e ? (i + n - j) % n : (i + j) % n;
                t[a * N + b] = rot + n * ((e + f) % 2);
            }
        }
        return {N, std::move(t)};
    }

   private:
    std::optional<size_t> find_identity() const {
        for (size_t e = 0; e < order_; e++) {
            bool ok = true;
            for (size_t a = 0; a < order_ && ok; a++) {
                ok = mul(e, a) == a && mul(a, e) == a;
            }
            if (ok) {
                return e;
            }
        }
        return std::nullopt;
    }

    size_t order_;
    std::vector<size_t> cayley_;
    size_t identity_ = 0;
    std::vector<size_t> inverse_;
};

/// Reads "N" followed by N rows of N element indices. Throws ParseError.
inline FiniteGroup parse_cayley_table(std::istream &in) {
    long long n;
    if (!(in >> n) || n <= 0) {
        throw ParseError("Cayley table: first token must be a positive order N");
    }
    const size_t N = static_cast<size_t>(n);
    std::vector<size_t> t;
    t.reserve(N * N);
    for (size_t k = 0; k < N * N; k++) {
        long long v;
        if (!(in >> v)) {
            throw ParseError("Cayley table: expected " + std::to_string(N * N) + " entries, got " + std::to_string(k));
        }
        if (v < 0 || static_cast<size_t>(v) >= N) {
            throw ParseError("Cayley table: entry " + std::to_string(v) + " out of range");
        }
        t.push_back(static_cast<size_t>(v));
    }
    std::string extra;
    if (in >> extra) {
        throw ParseError("Cayley table: trailing data '" + extra + "'");
    }
    try {
        return {N, std::move(t)};
    } catch (const InvalidArgument &e) {
        throw ParseError(std::string("Cayley table: ") + e.what());
    }
}

inline FiniteGroup load_cayley_table(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    return parse_cayley_table(in);
}

inline std::string format_cayley_table(const FiniteGroup &g) {
    std::ostringstream ss;
    ss << g.order() << "\n";
    for (size_t a = 0; a < g.order(); a++) {
        for (size_t b = 0; b < g.order(); b++) {
            ss << (b ? " " : "") << g.mul(a, b);
        }
        ss << "\n";
    }
    return ss.str();
}

/// Conjugation by h as a permutation of the element indices: x -> h x h^-1.
inline Permutation inner_automorphism(const FiniteGroup &g, size_t h) {
    if (h >= g.order()) {
        throw InvalidArgument("inner_automorphism: element index out of range");
    }
    std::vector<size_t> images(g.order());
    for (size_t x = 0; x < g.order(); x++) {
        images[x] = g.mul(g.mul(h, x), g.inverse(h));
    }
    return Permutation(std::move(images));
}

inline bool is_group_automorphism(const FiniteGroup &g, const Permutation &a) {
    if (a.size() != g.order()) {
        return false;
    }
    for (size_t x = 0; x < g.order(); x++) {
        for (size_t y = 0; y < g.order(); y++) {
            if (a(g.mul(x, y)) != g.mul(a(x), a(y))) {
                return false;
            }
        }
    }
    return true;
}

/// Smallest-index h with h g2 h^-1 = g1, by exhaustive scan.
inline std::optional<size_t> conjugacy_oracle(const FiniteGroup &g, size_t g1, size_t g2) {
    if (g1 >= g.order() || g2 >= g.order()) {
        throw InvalidArgument("conjugacy_oracle: element index out of range");
    }
    for (size_t h = 0; h < g.order(); h++) {
        if (g.mul(g.mul(h, g2), g.inverse(h)) == g1) {
            return h;
        }
    }
    return std::nullopt;
}

inline size_t centralizer_order(const FiniteGroup &g, size_t x) {
    size_t count = 0;
    for (size_t h = 0; h < g.order(); h++) {
        count += g.mul(h, x) == g.mul(x, h);
    }
    return count;
}

}  // namespace qperm
