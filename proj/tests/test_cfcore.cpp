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

#include "cfforge/cfcore.hpp"
#include "support/oracles.hpp"

namespace cfforge {
namespace {

using testing::Rng;

BoxSet iv(Rat lo, Rat hi) { return BoxSet::from_box(Box(Vec{lo}, Vec{hi})); }

CFSchedule basic(Rat h1, std::vector<Rat> c, bool strong) {
    std::vector<Vec> cs;
    for (auto& x : c) cs.push_back(Vec{x});
    return CFSchedule::validate(1, {CFLevel{Rat(1), cs}, CFLevel{h1, {}}}, strong);
}

Violation violation_of(Rat h1, std::vector<Rat> c, bool strong) {
    try {
        basic(h1, std::move(c), strong);
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.level, 0);
        return e.kind;
    }
    ADD_FAILURE() << "expected a violation";
    return Violation::BadCube;
}

TEST(Validate, Examples) {
    EXPECT_NO_THROW(basic(5, {0, 2}, false));
    EXPECT_NO_THROW(basic(5, {0, 2}, true));
    EXPECT_EQ(violation_of(5, {0, Rat(1, 2)}, false), Violation::Independence);
    EXPECT_NO_THROW(basic(3, {0, 2}, false));
    EXPECT_EQ(violation_of(3, {0, 2}, true), Violation::StrongContainment);
    EXPECT_EQ(violation_of(Rat(5, 2), {0, 2}, false), Violation::Containment);
}

TEST(Validate, BadCubes) {
    EXPECT_THROW(CFSchedule::validate(1, {}, false), ValidationError);
    EXPECT_THROW(CFSchedule::validate(1, {CFLevel{Rat(0), {}}}, false), ValidationError);
    EXPECT_EQ(violation_of(5, {0}, false), Violation::BadCube);
    EXPECT_THROW(CFSchedule::validate(1, {CFLevel{Rat(1), {Vec{Rat(0)}, Vec{Rat(2)}}}}, false), ValidationError);
}

// Independence via a different route: F + c and F + c' overlap as sets.
TEST(Validate, IndependenceMatchesOverlapOracle) {
    Rng rng(42);
    for (int trial = 0; trial < 300; ++trial) {
        int dim = static_cast<int>(testing::uniform(rng, 1, 2));
        Rat h(testing::uniform(rng, 1, 4), 2);
        std::vector<Vec> cs;
        int r = static_cast<int>(testing::uniform(rng, 2, 4));
        for (int i = 0; i < r; ++i) {
            Vec c;
            for (int k = 0; k < dim; ++k) c.push_back(Rat(testing::uniform(rng, 0, 12), 4));
            cs.push_back(c);
        }
        bool overlap = false;
        bool dup = false;
        BoxSet f = BoxSet::cube(dim, h);
        for (std::size_t i = 0; i < cs.size(); ++i) {
            for (std::size_t j = i + 1; j < cs.size(); ++j) {
                if (cs[i] == cs[j]) dup = true;
                if (!disjoint(translate(f, cs[i]), translate(f, cs[j]))) overlap = true;
            }
        }
        if (dup) continue;
        auto issue = find_violation(dim, {CFLevel{h, cs}, CFLevel{Rat(100), {}}}, false);
        ASSERT_EQ(issue.has_value(), overlap);
        if (issue) EXPECT_EQ(issue->kind, Violation::Independence);
    }
}

TEST(Measure, Examples) {
    CFSchedule s = basic(5, {0, 2}, true);
    EXPECT_EQ(cylinder_measure(s, make_cylinder(s, 0, iv(0, 1))), Rat(1));
    EXPECT_EQ(cylinder_measure(s, make_cylinder(s, 1, iv(0, 1))), Rat(1, 2));
    EXPECT_THROW(make_cylinder(s, 0, iv(0, 2)), std::invalid_argument);
    EXPECT_THROW(cylinder_measure(s, Cylinder{3, iv(0, 1)}), LevelOutOfRange);
}

TEST(Lift, Examples) {
    CFSchedule s = basic(5, {0, 2}, true);
    Cylinder c = make_cylinder(s, 0, iv(0, 1));
    EXPECT_EQ(lift(s, c, 0), c);
    Cylinder l = lift(s, c, 1);
    EXPECT_EQ(l.level, 1);
    EXPECT_EQ(l.base, unite(iv(0, 1), iv(2, 3)));
    EXPECT_EQ(cylinder_measure(s, l), Rat(1));
    EXPECT_THROW(lift(s, c, 2), LevelOutOfRange);
    EXPECT_THROW(lift(s, l, 0), std::invalid_argument);
}

TEST(ApplyTg, Examples) {
    CFSchedule s0 = CFSchedule::validate(1, {CFLevel{Rat(1), {}}}, false);
    Cylinder half = make_cylinder(s0, 0, iv(0, Rat(1, 2)));
    auto r0 = apply_tg(s0, half, Vec{Rat(0)}, Rat(1, 100));
    EXPECT_EQ(r0.image, half);
    EXPECT_TRUE(r0.remainder.base.empty());
    auto r1 = apply_tg(s0, half, Vec{Rat(1, 2)}, Rat(1, 100));
    EXPECT_EQ(r1.image, (Cylinder{0, iv(Rat(1, 2), 1)}));
    EXPECT_TRUE(r1.remainder.base.empty());

    CFSchedule s = basic(5, {0, 2}, true);
    auto r2 = apply_tg(s, make_cylinder(s, 0, iv(0, 1)), Vec{Rat(1, 2)}, Rat(1, 100));
    EXPECT_EQ(r2.image.level, 1);
    EXPECT_EQ(r2.image.base, unite(iv(Rat(1, 2), Rat(3, 2)), iv(Rat(5, 2), Rat(7, 2))));
    EXPECT_TRUE(r2.remainder.base.empty());

    EXPECT_THROW(apply_tg(s, make_cylinder(s, 0, iv(0, 1)), Vec{Rat(10)}, Rat(1, 100)), ScheduleTooShort);
    EXPECT_THROW(apply_tg(s, make_cylinder(s, 0, iv(0, 1)), Vec{Rat(0)}, Rat(0)), std::invalid_argument);
}

TEST(InfiniteMeasure, Examples) {
    auto geometric = [](std::int64_t base, int levels) {
        std::vector<CFLevel> lv;
        Rat h(1);
        for (int n = 0; n < levels; ++n) {
            Rat next = h * Rat(base);
            if (n + 1 < levels) {
                lv.push_back(CFLevel{h, {Vec{Rat(0)}, Vec{next - h}}});
            } else {
                lv.push_back(CFLevel{h, {}});
            }
            h = next;
        }
        return CFSchedule::validate(1, lv, false);
    };
    auto four = check_infinite_measure(geometric(4, 5), Rat(2));
    ASSERT_EQ(four.ratios.size(), 5u);
    for (std::size_t n = 0; n < 5; ++n) EXPECT_EQ(four.ratios[n], Rat(std::int64_t{1} << n));
    EXPECT_TRUE(four.diverging);
    auto two = check_infinite_measure(geometric(2, 5), Rat(2));
    for (const auto& r : two.ratios) EXPECT_EQ(r, Rat(1));
    EXPECT_FALSE(two.diverging);
}

TEST(Power, Examples) {
    CFSchedule s = basic(5, {0, 2}, true);
    EXPECT_EQ(power_schedule(s, 1), s);
    CFSchedule p2 = power_schedule(s, 2);
    EXPECT_EQ(p2.dim(), 2);
    EXPECT_EQ(p2.h(0), Rat(1));
    std::vector<Vec> want{{Rat(0), Rat(0)}, {Rat(0), Rat(2)}, {Rat(2), Rat(0)}, {Rat(2), Rat(2)}};
    EXPECT_EQ(p2.translations(1), want);
    EXPECT_TRUE(p2.strong());
    EXPECT_FALSE(find_violation(2, p2.levels(), true).has_value());
    EXPECT_THROW(power_schedule(s, 3, 4), PowerOverflow);
    EXPECT_THROW(power_schedule(s, 0), std::invalid_argument);
}

TEST(DiagTime, Examples) {
    EXPECT_EQ(diag_time(Rat(1, 2), 2), (Vec{Rat(1, 2), Rat(1, 2)}));
    EXPECT_EQ(diag_time(Rat(3), 1), (Vec{Rat(3)}));
    EXPECT_EQ(diag_time(Rat(0), 3), (Vec{Rat(0), Rat(0), Rat(0)}));
}

// Randomized laws on strong schedules.
TEST(CylinderCalculus, RandomizedLaws) {
    Rng rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        int dim = static_cast<int>(testing::uniform(rng, 1, 2));
        CFSchedule s = testing::random_schedule(rng, dim, static_cast<int>(testing::uniform(rng, 2, 4)));
        int n = static_cast<int>(testing::uniform(rng, 0, s.top() - 1));
        Cylinder c = make_cylinder(s, n, testing::random_subset(rng, s, n, 4, 3));
        const Rat mu = cylinder_measure(s, c);

        // lift: measure preserved and two steps compose.
        for (int m = n; m <= s.top(); ++m) {
            Cylinder l = lift(s, c, m);
            ASSERT_EQ(cylinder_measure(s, l), mu);
            if (m + 1 <= s.top()) ASSERT_EQ(lift(s, l, m + 1), lift(s, c, m + 1));
        }

        // In-range translation identity at the base level.
        Vec g;
        for (int k = 0; k < dim; ++k) g.push_back(Rat(testing::uniform(rng, 0, 8), 8));
        BoxSet in_range = intersect(c.base, translate(s.cube(n), scale_vec(g, Rat(-1))));
        if (in_range == c.base) {
            auto r = apply_tg(s, c, g, Rat(1, 1000000));
            ASSERT_EQ(lift(s, r.image, s.top()), lift(s, Cylinder{n, translate(c.base, g)}, s.top()));
        }

        // Measure bookkeeping and the group law.
        Rat eps = mu / Rat(2) + Rat(1, 1000);
        try {
            auto r = apply_tg(s, c, g, eps);
            ASSERT_EQ(cylinder_measure(s, r.image) + cylinder_measure(s, r.remainder), mu);
            ASSERT_LT(cylinder_measure(s, r.remainder), eps);
        } catch (const ScheduleTooShort&) {
        }
        Vec g2;
        for (int k = 0; k < dim; ++k) g2.push_back(Rat(testing::uniform(rng, 0, 4), 8));
        try {
            auto a = apply_tg(s, c, g, Rat(1, 1000000));
            auto b = apply_tg(s, a.image, g2, Rat(1, 1000000));
            auto ab = apply_tg(s, c, g + g2, Rat(1, 1000000));
            if (a.remainder.base.empty() && b.remainder.base.empty() && ab.remainder.base.empty()) {
                ASSERT_EQ(lift(s, b.image, s.top()), lift(s, ab.image, s.top()));
            }
        } catch (const ScheduleTooShort&) {
        }
    }
}

}  // namespace
}  // namespace cfforge
