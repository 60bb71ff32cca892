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
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "qperm/errors.hpp"

namespace qperm {

/// Rotation geometry of amplitude amplification with t marked items out of M.
/// The initial state makes angle theta with the unmarked subspace
/// (sin theta = sqrt(t/M)) and every iteration rotates it by alpha = 2 theta.
struct GroverGeometry {
    size_t M = 0;
    size_t t = 1;
    double theta = 0;
    double alpha = 0;
    size_t n_star = 0;

    /// n_star = max(min_iterations, round((pi/2 - theta) / (2 theta))).
    static GroverGeometry make(size_t M, size_t t = 1, size_t min_iterations = 1) {
        if (M == 0 || t == 0 || t > M) {
            throw InvalidArgument("Grover geometry needs 1 <= t <= M (got t=" + std::to_string(t) +
                                  ", M=" + std::to_string(M) + ")");
        }
        GroverGeometry g;
        g.M = M;
        g.t = t;
        g.theta = std::asin(std::sqrt(static_cast<double>(t) / static_cast<double>(M)));
        g.alpha = 2 * g.theta;
        const auto raw = static_cast<size_t>(std::llround((std::numbers::pi / 2 - g.theta) / (2 * g.theta)));
        g.n_star = std::max(min_iterations, raw);
        return g;
    }

    /// sin(alpha) written out for a single marked program: (2/sqrt M)(1 - 1/M)^{1/2}.
    static double sin_alpha_single(size_t M) {
        const double m = static_cast<double>(M);
        return 2.0 / std::sqrt(m) * std::sqrt(1.0 - 1.0 / m);
    }

    double predicted_success(size_t k) const {
        const double s = std::sin((2.0 * static_cast<double>(k) + 1.0) * theta);
        return s * s;
    }
};

/// Iteration count for the fixed-point search; zero iterations are allowed
/// (t = N means every point is already marked).
inline size_t optimal_iterations(size_t N, size_t t) { return GroverGeometry::make(N, t, 0).n_star; }

/// Success probability after k iterations, computed by applying the 2x2
/// rotation of Q in the orthonormal basis {|v1>, |v1_perp>} to the coordinates
/// of the starting vector |v2> = (1/sqrt M)|v1> + (1 - 1/M)^{1/2}|v1_perp>.
/// Independent of the closed form sin^2((2k+1) theta).
inline double subspace_predictor(size_t M, size_t k, size_t t = 1) {
    if (M == 0 || t == 0 || t > M) {
        throw InvalidArgument("subspace_predictor needs 1 <= t <= M");
    }
    const double f = static_cast<double>(t) / static_cast<double>(M);
    const double c = 1.0 - 2.0 * f;
    const double s = 2.0 * std::sqrt(f) * std::sqrt(1.0 - f);
    double a = std::sqrt(f);        // <v1|psi>
    double b = std::sqrt(1.0 - f);  // <v1_perp|psi>
    for (size_t i = 0; i < k; i++) {
        const double na = c * a + s * b;
        const double nb = c * b - s * a;
        a = na;
        b = nb;
    }
    return a * a;
}

/// Exact success probability before the first and after every iteration.
struct GroverTrace {
    size_t iterations = 0;
    std::vector<double> success;
    /// Attempts made by a verify-and-retry driver (1 when the first measurement verified).
    size_t attempts = 0;

    double final_success() const { return success.empty() ? 0.0 : success.back(); }
};

}  // namespace qperm
