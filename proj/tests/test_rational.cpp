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

#include <limits>

#include "cfforge/rational.hpp"

namespace cfforge {
namespace {

TEST(Rat, ReducedForm) {
    Rat r(6, -4);
    EXPECT_EQ(r.str(), "-3/2");
    EXPECT_EQ(Rat(0, 5).str(), "0/1");
    EXPECT_EQ(Rat(7).str(), "7/1");
}

TEST(Rat, ParseAcceptsBothForms) {
    EXPECT_EQ(Rat::parse("3/6"), Rat(1, 2));
    EXPECT_EQ(Rat::parse("-4"), Rat(-4));
    EXPECT_EQ(Rat::parse(" 5/1 "), Rat(5));
}

TEST(Rat, ParseRejectsZeroDenominatorAndJunk) {
    EXPECT_THROW(Rat::parse("1/0"), std::invalid_argument);
    EXPECT_THROW(Rat::parse("1/-2"), std::invalid_argument);
    EXPECT_THROW(Rat::parse("x"), std::invalid_argument);
    EXPECT_THROW(Rat::parse(""), std::invalid_argument);
    EXPECT_THROW(Rat::parse("1.5"), std::invalid_argument);
}

TEST(Rat, Arithmetic) {
    EXPECT_EQ(Rat(1, 2) + Rat(1, 3), Rat(5, 6));
    EXPECT_EQ(Rat(1, 2) - Rat(1, 3), Rat(1, 6));
    EXPECT_EQ(Rat(2, 3) * Rat(3, 4), Rat(1, 2));
    EXPECT_EQ(Rat(2, 3) / Rat(4, 3), Rat(1, 2));
    EXPECT_THROW(Rat(1) / Rat(0), std::domain_error);
    EXPECT_LT(Rat(1, 3), Rat(1, 2));
    EXPECT_EQ(Rat(-7, 2).floor(), Rat(-4));
    EXPECT_EQ(Rat(7, 2).floor(), Rat(3));
}

TEST(Rat, PromotesPastInt64AndBack) {
    const std::int64_t big = std::numeric_limits<std::int64_t>::max();
    Rat x(big);
    Rat y = x * x;
    EXPECT_FALSE(y.is_small());
    EXPECT_EQ(y / x, x);
    EXPECT_TRUE((y / x).is_small());
    Rat m(std::numeric_limits<std::int64_t>::min());
    EXPECT_EQ(-(-m), m);
    EXPECT_EQ((m - Rat(1)) + Rat(1), m);
}

TEST(Rat, BigParseRoundTrip) {
    Rat r = Rat::parse("123456789012345678901234567891/7");
    EXPECT_FALSE(r.is_small());
    EXPECT_EQ(Rat::parse(r.str()), r);
    EXPECT_EQ(r.str(), "123456789012345678901234567891/7");
}

TEST(Rat, VectorHelpers) {
    Vec v = parse_vec("1/2,-3");
    ASSERT_EQ(v.size(), 2u);
    EXPECT_EQ(max_norm(v), Rat(3));
    EXPECT_EQ(to_string(v + v), "(1/1, -6/1)");
    EXPECT_EQ(scale_vec(v, Rat(2)), (Vec{Rat(1), Rat(-6)}));
}

}  // namespace
}  // namespace cfforge
