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
#include <random>
#include <vector>

namespace qperm {

/// Seedable generator with a fully specified output stream.
///
/// The engine is std::mt19937_64, whose sequence is fixed by the standard.
/// The standard distributions are implementation-defined, so bounded integers
/// and unit doubles are derived here from raw 64-bit words. Every random
/// instance in the library is reconstructible from (seed, parameters) on any
/// conforming toolchain.
class Rng {
   public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound). Rejection sampling removes modulo bias.
    uint64_t below(uint64_t bound) {
        if (bound <= 1) {
            return 0;
        }
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T> &items) {
        for (size_t i = items.size(); i > 1; i--) {
            size_t j = static_cast<size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace qperm
