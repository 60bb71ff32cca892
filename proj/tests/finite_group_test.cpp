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

#include "qperm/finite_group.hpp"

#include <sstream>

#include "gtest/gtest.h"

using namespace qperm;

TEST(finite_group, builtin_orders) {
    EXPECT_EQ(FiniteGroup::cyclic(6).order(), 6u);
    EXPECT_EQ(FiniteGroup::symmetric(3).order(), 6u);
    EXPECT_EQ(FiniteGroup::symmetric(4).order(), 24u);
    EXPECT_EQ(FiniteGroup::symmetric(5).order(), 120u);
    EXPECT_EQ(FiniteGroup::dihedral(4).order(), 8u);
    EXPECT_THROW(FiniteGroup::symmetric(6), InvalidArgument);
    EXPECT_TRUE(FiniteGroup::cyclic(6).is_abelian());
    EXPECT_FALSE(FiniteGroup::symmetric(3).is_abelian());
    EXPECT_FALSE(FiniteGroup::dihedral(4).is_abelian());
    EXPECT_EQ(FiniteGroup::symmetric(4).identity(), 0u);
}

TEST(finite_group, dihedral_relations) {
    const size_t n = 4;
    auto g = FiniteGroup::dihedral(n);
    const size_t r = 1, s = n;
    size_t x = g.identity();
    for (size_t k = 0; k < n; k++) {
        x = g.mul(x, r);
    }
    EXPECT_EQ(x, g.identity());
    EXPECT_EQ(g.mul(s, s), g.identity());
    EXPECT_EQ(g.mul(g.mul(s, r), s), g.inverse(r));
}

TEST(finite_group, rejects_non_groups) {
    // Not associative: a Latin square without an associative product.
    std::vector<size_t> bad = {0, 1, 2, 1, 2, 0, 2, 0, 1};
    EXPECT_NO_THROW(FiniteGroup(3, bad));  // Z_3
    std::vector<size_t> quasigroup = {0, 2, 1, 2, 1, 0, 1, 0, 2};
    EXPECT_THROW(FiniteGroup(3, quasigroup), InvalidArgument);
    EXPECT_THROW(FiniteGroup(2, {0, 0, 0, 0}), InvalidArgument);
    EXPECT_THROW(FiniteGroup(2, {0, 1, 1}), InvalidArgument);
}

TEST(finite_group, parse_round_trip) {
    auto g = FiniteGroup::dihedral(3);
    std::istringstream in(format_cayley_table(g));
    auto h = parse_cayley_table(in);
    EXPECT_EQ(h.cayley(), g.cayley());
}

TEST(finite_group, parse_errors) {
    auto parse = [](const std::string &text) {
        std::istringstream in(text);
        return parse_cayley_table(in);
    };
    EXPECT_THROW(parse(""), ParseError);
    EXPECT_THROW(parse("0"), ParseError);
    EXPECT_THROW(parse("2\n0 1\n1"), ParseError);
    EXPECT_THROW(parse("2\n0 1\n1 2"), ParseError);
    EXPECT_THROW(parse("2\n0 1\n1 0\n7"), ParseError);
    EXPECT_THROW(parse("3\n0 2 1\n2 1 0\n1 0 2"), ParseError);
    EXPECT_EQ(parse("2\n0 1\n1 0\n").order(), 2u);
}

TEST(finite_group, inner_automorphism) {
    auto s3 = FiniteGroup::symmetric(3);
    EXPECT_TRUE(inner_automorphism(s3, s3.identity()).is_identity());
    auto z6 = FiniteGroup::cyclic(6);
    for (size_t h = 0; h < 6; h++) {
        EXPECT_TRUE(inner_automorphism(z6, h).is_identity());
    }
    EXPECT_THROW(inner_automorphism(s3, 6), InvalidArgument);

    // S_3 in lexicographic order: index 1 is images (0 2 1), a transposition.
    auto elems = FiniteGroup::symmetric_elements(3);
    ASSERT_EQ(elems[1], Permutation({0, 2, 1}));
    auto conj = inner_automorphism(s3, 1);
    for (size_t x = 0; x < 6; x++) {
        auto expected = compose(compose(elems[1], elems[x]), elems[1].inverse());
        EXPECT_EQ(elems[conj(x)], expected);
    }
}

TEST(finite_group, inner_automorphisms_preserve_products) {
    for (const auto &g : {FiniteGroup::symmetric(3), FiniteGroup::symmetric(4), FiniteGroup::dihedral(4),
                          FiniteGroup::dihedral(5)}) {
        for (size_t h = 0; h < g.order(); h++) {
            EXPECT_TRUE(is_group_automorphism(g, inner_automorphism(g, h)));
        }
    }
}

TEST(finite_group, conjugacy_oracle) {
    auto s3 = FiniteGroup::symmetric(3);
    for (size_t x = 0; x < 6; x++) {
        EXPECT_EQ(conjugacy_oracle(s3, x, x), std::optional<size_t>(0));
    }
    // Transpositions of S_3 in lexicographic order: 1 = (0 2 1), 2 = (1 0 2), 5 = (2 1 0).
    auto h = conjugacy_oracle(s3, 1, 2);
    ASSERT_TRUE(h);
    EXPECT_EQ(s3.mul(s3.mul(*h, 2), s3.inverse(*h)), 1u);
    EXPECT_FALSE(conjugacy_oracle(s3, 1, 3));  // transposition vs 3-cycle

    auto z6 = FiniteGroup::cyclic(6);
    for (size_t a = 0; a < 6; a++) {
        for (size_t b = 0; b < 6; b++) {
            EXPECT_EQ(conjugacy_oracle(z6, a, b).has_value(), a == b);
        }
    }
}

TEST(finite_group, class_equation) {
    // sum over x of |C(x)| = |G| * (number of classes); S_4 has 5 classes.
    auto s4 = FiniteGroup::symmetric(4);
    size_t total = 0;
    for (size_t x = 0; x < 24; x++) {
        total += centralizer_order(s4, x);
    }
    EXPECT_EQ(total, 24u * 5u);
}
