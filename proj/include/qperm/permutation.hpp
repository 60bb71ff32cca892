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
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "qperm/errors.hpp"
#include "qperm/rng.hpp"

namespace qperm {

/// A bijection on {0, ..., N-1}, stored as its image table.
class Permutation {
   public:
    Permutation() = default;

    /// Throws InvalidArgument unless `images` is a bijection.
    explicit Permutation(std::vector<size_t> images) : images_(std::move(images)) {
        std::vector<bool> seen(images_.size(), false);
        for (size_t v : images_) {
            if (v >= images_.size() || seen[v]) {
                throw InvalidArgument("permutation image table is not a bijection");
            }
            seen[v] = true;
        }
    }

    static Permutation identity(size_t n) {
        std::vector<size_t> images(n);
        std::iota(images.begin(), images.end(), size_t{0});
        return Permutation(std::move(images));
    }

    /// The transposition of a and b on n points.
    static Permutation swap(size_t n, size_t a, size_t b) {
        auto p = identity(n);
        if (a >= n || b >= n) {
            throw InvalidArgument("swap point out of range");
        }
        std::swap(p.images_[a], p.images_[b]);
        return p;
    }

    size_t size() const { return images_.size(); }
    size_t operator()(size_t i) const { return images_[i]; }
    size_t operator[](size_t i) const { return images_[i]; }
    const std::vector<size_t> &images() const { return images_; }

    bool is_identity() const {
        for (size_t i = 0; i < images_.size(); i++) {
            if (images_[i] != i) {
                return false;
            }
        }
        return true;
    }

    Permutation inverse() const {
        std::vector<size_t> inv(images_.size());
        for (size_t i = 0; i < images_.size(); i++) {
            inv[images_[i]] = i;
        }
        Permutation out;
        out.images_ = std::move(inv);
        return out;
    }

    bool operator==(const Permutation &) const = default;

    std::string str() const {
        std::ostringstream ss;
        for (size_t i = 0; i < images_.size(); i++) {
            ss << (i ? " " : "") << images_[i];
        }
        return ss.str();
    }

   private:
    std::vector<size_t> images_;
};

/// Apply b first, then a.
inline Permutation compose(const Permutation &a, const Permutation &b) {
    if (a.size() != b.size()) {
        throw InvalidArgument("compose: permutation sizes differ");
    }
    std::vector<size_t> images(a.size());
    for (size_t i = 0; i < a.size(); i++) {
        images[i] = a(b(i));
    }
    return Permutation(std::move(images));
}

/// n-fold composition by repeated squaring.
inline Permutation power(const Permutation &a, uint64_t n) {
    auto result = Permutation::identity(a.size());
    auto base = a;
    while (n) {
        if (n & 1) {
            result = compose(base, result);
        }
        base = compose(base, base);
        n >>= 1;
    }
    return result;
}

inline std::vector<size_t> fixed_points(const Permutation &a) {
    std::vector<size_t> out;
    for (size_t i = 0; i < a.size(); i++) {
        if (a(i) == i) {
            out.push_back(i);
        }
    }
    return out;
}

/// Disjoint cycles, each starting at its smallest element, sorted by that element.
/// Fixed points are kept as length-1 cycles.
struct CycleDecomposition {
    size_t degree = 0;
    std::vector<std::vector<size_t>> cycles;

    /// Multiplies the cycles back together.
    Permutation to_permutation() const {
        std::vector<size_t> images(degree);
        std::iota(images.begin(), images.end(), size_t{0});
        for (const auto &c : cycles) {
            for (size_t k = 0; k < c.size(); k++) {
                images[c[k]] = c[(k + 1) % c.size()];
            }
        }
        return Permutation(std::move(images));
    }

    std::vector<std::vector<size_t>> cycles_of_length(size_t n) const {
        std::vector<std::vector<size_t>> out;
        for (const auto &c : cycles) {
            if (c.size() == n) {
                out.push_back(c);
            }
        }
        return out;
    }

    bool operator==(const CycleDecomposition &) const = default;
};

/// The cycle of `a` through `start`, rotated to begin at its smallest element.
inline std::vector<size_t> cycle_through(const Permutation &a, size_t start) {
    std::vector<size_t> cycle{start};
    for (size_t x = a(start); x != start; x = a(x)) {
        cycle.push_back(x);
    }
    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
    return cycle;
}

inline CycleDecomposition cycle_decompose(const Permutation &a) {
    CycleDecomposition out;
    out.degree = a.size();
    std::vector<bool> seen(a.size(), false);
    for (size_t start = 0; start < a.size(); start++) {
        if (seen[start]) {
            continue;
        }
        std::vector<size_t> cycle;
        for (size_t x = start; !seen[x]; x = a(x)) {
            seen[x] = true;
            cycle.push_back(x);
        }
        out.cycles.push_back(std::move(cycle));
    }
    return out;
}

inline Permutation random_permutation(size_t n, Rng &rng) {
    std::vector<size_t> images(n);
    std::iota(images.begin(), images.end(), size_t{0});
    rng.shuffle(images);
    return Permutation(std::move(images));
}

/// Uniformly random permutation with exactly `t` fixed points.
/// The remaining n - t points are deranged by rejection sampling.
inline Permutation random_with_fixed_points(size_t n, size_t t, Rng &rng) {
    if (t > n || n - t == 1) {
        throw InvalidArgument("no permutation of " + std::to_string(n) + " points has exactly " +
                              std::to_string(t) + " fixed points");
    }
    std::vector<size_t> points(n);
    std::iota(points.begin(), points.end(), size_t{0});
    rng.shuffle(points);
    std::vector<size_t> moved(points.begin() + static_cast<std::ptrdiff_t>(t), points.end());
    std::vector<size_t> images(n);
    std::iota(images.begin(), images.end(), size_t{0});
    if (!moved.empty()) {
        std::vector<size_t> target = moved;
        bool deranged;
        do {
            rng.shuffle(target);
            deranged = true;
            for (size_t k = 0; k < moved.size(); k++) {
                if (moved[k] == target[k]) {
                    deranged = false;
                    break;
                }
            }
        } while (!deranged);
        for (size_t k = 0; k < moved.size(); k++) {
            images[moved[k]] = target[k];
        }
    }
    return Permutation(std::move(images));
}

/// Parses one permutation image row ("3 0 1 2"). Throws ParseError.
inline Permutation parse_permutation(const std::string &line, size_t expected_size = 0) {
    std::istringstream in(line);
    std::vector<size_t> images;
    std::string token;
    while (in >> token) {
        size_t used = 0;
        unsigned long long v;
        try {
            v = std::stoull(token, &used);
        } catch (const std::exception &) {
            throw ParseError("not an element index: '" + token + "'");
        }
        if (used != token.size() || token[0] == '-') {
            throw ParseError("not an element index: '" + token + "'");
        }
        images.push_back(static_cast<size_t>(v));
    }
    if (images.empty()) {
        throw ParseError("empty permutation row");
    }
    if (expected_size && images.size() != expected_size) {
        throw ParseError("permutation row has " + std::to_string(images.size()) + " entries, expected " +
                         std::to_string(expected_size));
    }
    try {
        return Permutation(std::move(images));
    } catch (const InvalidArgument &e) {
        throw ParseError(e.what());
    }
}

}  // namespace qperm
