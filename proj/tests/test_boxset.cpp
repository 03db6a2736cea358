// Copyright 2026 The cfforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "cfforge/boxset.hpp"
#include "support/oracles.hpp"

namespace cfforge {
namespace {

using testing::Bitmap;
using testing::raster;
using testing::random_boxes;
using testing::Rng;

BoxSet iv(Rat lo, Rat hi) { return BoxSet::from_box(Box(Vec{lo}, Vec{hi})); }
BoxSet sq(Rat x0, Rat x1, Rat y0, Rat y1) { return BoxSet::from_box(Box(Vec{x0, y0}, Vec{x1, y1})); }

TEST(Box, RejectsEmpty) {
    EXPECT_THROW(Box(Vec{Rat(1)}, Vec{Rat(1)}), std::invalid_argument);
    EXPECT_THROW(Box(Vec{Rat(0), Rat(0)}, Vec{Rat(1)}), std::invalid_argument);
}

TEST(BoxSet, CanonicalizeExamples) {
    std::vector<Box> overlap{Box(Vec{Rat(0)}, Vec{Rat(2)}), Box(Vec{Rat(1)}, Vec{Rat(3)})};
    EXPECT_EQ(BoxSet::canonicalize(overlap, 1), iv(0, 3));
    EXPECT_TRUE(BoxSet::canonicalize({}, 1).empty());
    std::vector<Box> adj{Box(Vec{Rat(0), Rat(0)}, Vec{Rat(1), Rat(1)}), Box(Vec{Rat(0), Rat(1)}, Vec{Rat(1), Rat(2)})};
    BoxSet merged = BoxSet::canonicalize(adj, 2);
    EXPECT_EQ(merged, sq(0, 1, 0, 2));
    EXPECT_EQ(merged.box_count(), 1u);
}

TEST(BoxSet, UnionExamples) {
    EXPECT_EQ(unite(iv(0, 1), BoxSet(1)), iv(0, 1));
    BoxSet two = unite(iv(0, 1), iv(2, 3));
    EXPECT_EQ(two.box_count(), 2u);
    EXPECT_EQ(unite(sq(0, 2, 0, 2), sq(1, 3, 1, 3)).volume(), Rat(7));
}

TEST(BoxSet, IntersectExamples) {
    EXPECT_TRUE(intersect(iv(0, 1), iv(1, 2)).empty());
    EXPECT_EQ(intersect(iv(0, 2), iv(1, 3)), iv(1, 2));
    EXPECT_EQ(intersect(sq(0, 2, 0, 2), sq(1, 3, 1, 3)), sq(1, 2, 1, 2));
}

TEST(BoxSet, SubtractExamples) {
    BoxSet r = subtract(iv(0, 3), iv(1, 2));
    EXPECT_EQ(r, unite(iv(0, 1), iv(2, 3)));
    EXPECT_TRUE(subtract(r, r).empty());
    BoxSet l = subtract(sq(0, 2, 0, 2), sq(1, 2, 1, 2));
    EXPECT_EQ(l.volume(), Rat(3));
    EXPECT_LE(l.box_count(), 3u);
}

TEST(BoxSet, TranslateExamples) {
    EXPECT_EQ(translate(iv(0, 1), Vec{Rat(2)}), iv(2, 3));
    BoxSet a = unite(iv(0, 1), iv(5, 7));
    EXPECT_EQ(translate(a, Vec{Rat(0)}), a);
    EXPECT_EQ(translate(sq(0, 1, 0, 1), Vec{Rat(1, 2), Rat(3, 2)}), sq(Rat(1, 2), Rat(3, 2), Rat(3, 2), Rat(5, 2)));
}

TEST(BoxSet, VolumeAndSubset) {
    EXPECT_EQ(BoxSet(2).volume(), Rat(0));
    EXPECT_EQ(sq(0, 1, 0, 2).volume(), Rat(2));
    EXPECT_TRUE(is_subset(BoxSet(1), iv(0, 1)));
    EXPECT_TRUE(is_subset(iv(0, 1), iv(0, 1)));
    EXPECT_FALSE(is_subset(iv(0, 2), iv(0, 1)));
}

TEST(BoxSet, DimensionMismatchThrows) {
    EXPECT_THROW(unite(iv(0, 1), sq(0, 1, 0, 1)), DimensionMismatch);
    EXPECT_THROW(translate(iv(0, 1), Vec{Rat(1), Rat(1)}), DimensionMismatch);
    EXPECT_THROW(is_subset(iv(0, 1), sq(0, 1, 0, 1)), DimensionMismatch);
}

TEST(BoxSet, ProductAndContains) {
    BoxSet p = product(unite(iv(0, 1), iv(2, 3)), iv(0, 1));
    EXPECT_EQ(p.volume(), Rat(2));
    EXPECT_TRUE(p.contains(Vec{Rat(5, 2), Rat(1, 2)}));
    EXPECT_FALSE(p.contains(Vec{Rat(3, 2), Rat(1, 2)}));
    EXPECT_FALSE(p.contains(Vec{Rat(1), Rat(0)}));
}

// Randomized agreement with the bitmap oracle plus the algebraic laws.
class BoxSetOracle : public ::testing::TestWithParam<int> {};

TEST_P(BoxSetOracle, AgreesWithBitmap) {
    const int dim = GetParam();
    Rng rng(1000 + dim);
    for (int trial = 0; trial < 150; ++trial) {
        std::int64_t q = testing::uniform(rng, 1, dim == 3 ? 4 : 16);
        auto la = random_boxes(rng, dim, q, 0, 8, 6);
        auto lb = random_boxes(rng, dim, q, 0, 8, 6);
        BoxSet a = BoxSet::canonicalize(la, dim);
        BoxSet b = BoxSet::canonicalize(lb, dim);
        Bitmap ma(dim, q, 0, 8);
        ma.paint(la);
        Bitmap mb(dim, q, 0, 8);
        mb.paint(lb);
        ASSERT_EQ(raster(a, q, 0, 8), ma);
        ASSERT_EQ(a.volume(), ma.volume());
        ASSERT_EQ(raster(unite(a, b), q, 0, 8), ma.combine(mb, 0));
        ASSERT_EQ(raster(intersect(a, b), q, 0, 8), ma.combine(mb, 1));
        ASSERT_EQ(raster(subtract(a, b), q, 0, 8), ma.combine(mb, 2));
        ASSERT_EQ(is_subset(a, b), ma.subset_of(mb));
        ASSERT_EQ(disjoint(a, b), ma.combine(mb, 1).count() == 0);

        // Laws.
        ASSERT_EQ(BoxSet::canonicalize(a.boxes(), dim), a);
        ASSERT_EQ(unite(a, b), unite(b, a));
        ASSERT_EQ(intersect(a, b), intersect(b, a));
        ASSERT_EQ(unite(a, b).volume() + intersect(a, b).volume(), a.volume() + b.volume());
        ASSERT_TRUE(intersect(subtract(a, b), b).empty());
        ASSERT_EQ(unite(subtract(a, b), intersect(a, b)), a);
        Vec g;
        for (int i = 0; i < dim; ++i) g.push_back(Rat(testing::uniform(rng, -3 * q, 3 * q), q));
        ASSERT_EQ(translate(unite(a, b), g), unite(translate(a, g), translate(b, g)));
        ASSERT_EQ(translate(subtract(a, b), g), subtract(translate(a, g), translate(b, g)));
        ASSERT_EQ(translate(a, g).volume(), a.volume());
        std::shuffle(la.begin(), la.end(), rng);
        ASSERT_EQ(BoxSet::canonicalize(la, dim), a);
    }
}

INSTANTIATE_TEST_SUITE_P(Dims, BoxSetOracle, ::testing::Values(1, 2, 3));

TEST(BoxSet, TranslateUnionMatchesFold) {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        BoxSet a = BoxSet::canonicalize(random_boxes(rng, 2, 4, 0, 4, 4), 2);
        std::vector<Vec> offs;
        for (int k = 0; k < 4; ++k) offs.push_back(Vec{Rat(5 * k), Rat(testing::uniform(rng, 0, 8), 4)});
        BoxSet fold(2);
        for (const auto& o : offs) fold = unite(fold, translate(a, o));
        EXPECT_EQ(translate_union(a, offs), fold);
    }
}

}  // namespace
}  // namespace cfforge
