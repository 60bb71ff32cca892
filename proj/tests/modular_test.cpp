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

#include "qperm/modular.hpp"

#include <set>

#include "gtest/gtest.h"

using namespace qperm;

namespace {

// Reference: order by listing successive powers.
uint64_t order_by_scan(uint64_t k, uint64_t p) {
    uint64_t x = k % p;
    for (uint64_t t = 1; t < p; t++) {
        if (x == 1) {
            return t;
        }
        x = x * k % p;
    }
    return 0;
}

}  // namespace

TEST(modular, primality) {
    std::vector<uint64_t> primes;
    for (uint64_t n = 0; n < 40; n++) {
        if (is_prime(n)) {
            primes.push_back(n);
        }
    }
    EXPECT_EQ(primes, (std::vector<uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}));
}

TEST(modular, multiplicative_order) {
    EXPECT_EQ(multiplicative_order(1, 11), 1u);
    EXPECT_EQ(multiplicative_order(2, 5), 4u);
    EXPECT_EQ(multiplicative_order(3, 7), 6u);
    EXPECT_EQ(multiplicative_order(2, 7), 3u);
    EXPECT_THROW(multiplicative_order(2, 9), InvalidArgument);
    EXPECT_THROW(multiplicative_order(7, 7), InvalidArgument);
    for (uint64_t p : {3, 5, 7, 11, 13, 17, 19, 23}) {
        for (uint64_t k = 1; k < p; k++) {
            EXPECT_EQ(multiplicative_order(k, p), order_by_scan(k, p));
            EXPECT_EQ((p - 1) % multiplicative_order(k, p), 0u);
        }
    }
}

TEST(modular, find_generator) {
    EXPECT_EQ(find_generator(3), 2u);
    EXPECT_EQ(find_generator(5), 2u);
    EXPECT_EQ(find_generator(7), 3u);
    EXPECT_THROW(find_generator(15), InvalidArgument);
    for (uint64_t p : {11, 13, 17, 19, 23, 29, 31}) {
        const uint64_t g = find_generator(p);
        EXPECT_EQ(order_by_scan(g, p), p - 1);
        for (uint64_t k = 2; k < g; k++) {
            EXPECT_LT(order_by_scan(k, p), p - 1);
        }
    }
}

// "k does not divide p-1" neither implies nor is implied by k being a generator.
TEST(modular, divisibility_is_not_the_generator_test) {
    EXPECT_EQ(6 % 2, 0);
    EXPECT_FALSE(is_generator(2, 7));  // 2 divides 6, not a generator
    EXPECT_NE(6 % 4, 0);
    EXPECT_FALSE(is_generator(4, 7));  // 4 does not divide 6, still not a generator
    EXPECT_EQ(12 % 2, 0);
    EXPECT_TRUE(is_generator(2, 13));  // 2 divides 12, yet a generator
}

TEST(modular, discrete_log) {
    EXPECT_EQ(discrete_log(2, 1, 5), 0u);
    EXPECT_EQ(discrete_log(2, 3, 5), 3u);
    EXPECT_EQ(discrete_log(3, 5, 7), 5u);
    EXPECT_THROW(discrete_log(2, 3, 7), InvalidArgument);
    EXPECT_THROW(discrete_log(3, 0, 7), InvalidArgument);
    for (uint64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
        const uint64_t g = find_generator(p);
        std::set<uint64_t> image;
        for (uint64_t s = 0; s + 1 < p; s++) {
            const uint64_t x = pow_mod(g, s, p);
            image.insert(x);
            EXPECT_EQ(discrete_log(g, x, p), s);
        }
        EXPECT_EQ(image.size(), p - 1);
    }
}

TEST(modular, automorphism_action) {
    for (uint64_t p : {3, 5, 7, 11, 13}) {
        for (uint64_t k = 1; k < p; k++) {
            ModAutomorphism a(p, k);
            EXPECT_EQ(a(0), 0u);
            EXPECT_EQ(a(1), k);
            auto perm = a.as_permutation();  // throws unless bijective
            EXPECT_EQ(perm.size(), p);
        }
    }
    EXPECT_THROW(ModAutomorphism(7, 0), InvalidArgument);
    EXPECT_THROW(ModAutomorphism(8, 3), InvalidArgument);
}

TEST(modular, automorphism_group_is_cyclic_multiplication) {
    for (uint64_t p : {5, 7, 11}) {
        for (uint64_t k = 1; k < p; k++) {
            for (uint64_t k2 = 1; k2 < p; k2++) {
                ModAutomorphism a(p, k), b(p, k2);
                EXPECT_EQ(compose(a.as_permutation(), b.as_permutation()), ModAutomorphism(p, k * k2 % p).as_permutation());
                EXPECT_EQ(compose(a, b), ModAutomorphism(p, k * k2 % p));
            }
        }
    }
}

TEST(modular, hidden_homomorphism_is_a_homomorphism) {
    for (auto [p, m] : std::vector<std::pair<uint64_t, size_t>>{{5, 2}, {7, 2}, {3, 3}}) {
        Rng rng(p * 100 + m);
        auto f = HiddenHomomorphism::random(p, m, rng);
        auto all = enumerate_exponents(p - 1, m);
        EXPECT_TRUE(f.evaluate(all.front()).is_identity());
        for (const auto &a : all) {
            for (const auto &b : all) {
                EXPECT_EQ(f.evaluate(a + b), compose(f.evaluate(a), f.evaluate(b)));
            }
        }
    }
}

TEST(modular, enumerate_exponents) {
    auto all = enumerate_exponents(3, 2);
    ASSERT_EQ(all.size(), 9u);
    EXPECT_EQ(all[0].entries, (std::vector<uint64_t>{0, 0}));
    EXPECT_EQ(all[5].entries, (std::vector<uint64_t>{1, 2}));
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
}

TEST(modular, classical_bv) {
    auto trivial = classical_bv(HiddenHomomorphism(7, {1, 1, 1}));
    EXPECT_TRUE(trivial.y.is_zero());

    auto a = classical_bv(HiddenHomomorphism(5, {2, 4}));
    EXPECT_EQ(a.y.entries, (std::vector<uint64_t>{1, 2}));
    EXPECT_EQ(a.oracle_uses, 2u);

    auto b = classical_bv(HiddenHomomorphism(7, {3, 2, 6}));
    EXPECT_EQ(b.y.entries, (std::vector<uint64_t>{1, 2, 3}));
    EXPECT_EQ(b.oracle_uses, 3u);
}

TEST(modular, oracle_counts_calls) {
    HomomorphismOracle oracle(HiddenHomomorphism(5, {2, 3}));
    ExponentVector n{4, {1, 1}};
    EXPECT_EQ(oracle(n, 1), 1u);  // 2 * 3 = 6 = 1 mod 5
    EXPECT_EQ(oracle(n, 2), 2u);
    EXPECT_EQ(oracle.calls(), 2u);
}
