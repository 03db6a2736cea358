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

#include "cfforge/forcing.hpp"
#include "support/oracles.hpp"

namespace cfforge {
namespace {

CFSchedule two_copies() {
    return CFSchedule::validate(1, {CFLevel{Rat(1), {Vec{Rat(0)}, Vec{Rat(2)}}}, CFLevel{Rat(5), {}}}, true);
}

std::vector<std::pair<Rat, Rat>> ends(const Partition& p) {
    std::vector<std::pair<Rat, Rat>> out;
    for (const auto& a : p.atoms) out.emplace_back(a.lo[0], a.hi[0]);
    return out;
}

TEST(Partition, InitialSingleAtom) {
    CFSchedule s = two_copies();
    Partition p = initial_partition(s);
    ASSERT_EQ(p.atoms.size(), 1u);
    EXPECT_EQ(ends(p)[0], std::make_pair(Rat(0), Rat(1)));
    EXPECT_EQ(p.uniform_length(), Rat(1));
}

TEST(Partition, HalfMeshExample) {
    CFSchedule s = two_copies();
    Partition p0 = initial_partition(s, 2);
    Partition p1 = make_partition(s, 1, p0);
    std::vector<std::pair<Rat, Rat>> want;
    for (int k = 0; k < 10; ++k) want.emplace_back(Rat(k, 2), Rat(k + 1, 2));
    EXPECT_EQ(ends(p1), want);
    auto issue = check_partition(s, p0, &p1);
    EXPECT_TRUE(issue.cover);
    EXPECT_TRUE(issue.refinement);
    EXPECT_TRUE(check_partition(s, p1, nullptr).mesh);
}

TEST(Partition, LawsOnRandomSchedules) {
    testing::Rng rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        CFSchedule s = testing::random_schedule(rng, 1, 5, 3);
        Partition prev = initial_partition(s, static_cast<int>(testing::uniform(rng, 1, 3)));
        for (int n = 1; n <= s.top(); ++n) {
            Partition next = make_partition(s, n, prev);
            auto issue = check_partition(s, prev, &next);
            ASSERT_TRUE(issue.cover);
            ASSERT_TRUE(issue.refinement);
            auto self = check_partition(s, next, nullptr);
            ASSERT_TRUE(self.cover);
            ASSERT_TRUE(self.mesh);
            prev = next;
        }
    }
}

TEST(Partition, ProductAtoms) {
    CFSchedule s = two_copies();
    Partition p = initial_partition(s, 2);
    auto atoms = product_atoms(p, 2);
    ASSERT_EQ(atoms.size(), 4u);
    Rat total;
    for (const auto& a : atoms) total += a.volume();
    EXPECT_EQ(total, Rat(1));
    EXPECT_EQ(atoms[1], BoxSet::from_box(Box(Vec{Rat(0), Rat(1, 2)}, Vec{Rat(1, 2), Rat(1)})));
}

TEST(AuxFlow, StaircaseExample) {
    AuxFlowSpec spec;
    spec.cuts = {2};
    spec.gap = {Rat(2)};
    spec.stair_lin = {Rat(1)};
    spec.stair_quad = {Rat(0)};
    CFSchedule s = gen_aux(spec, Rat(1), 1);
    ASSERT_EQ(s.top(), 1);
    EXPECT_EQ(s.translations(1), (std::vector<Vec>{Vec{Rat(0)}, Vec{Rat(4)}}));
    EXPECT_EQ(s.h(1), Rat(6));
    EXPECT_TRUE(s.strong());
}

TEST(AuxFlow, StagesRepeatLastEntry) {
    AuxFlowSpec spec;
    spec.cuts = {2, 3};
    CFSchedule s = gen_aux(spec, Rat(1), 4);
    EXPECT_EQ(s.translations(1).size(), 2u);
    for (int k = 2; k <= 4; ++k) EXPECT_EQ(s.translations(k).size(), 3u);
    spec.cuts = {1};
    EXPECT_THROW(gen_aux(spec, Rat(1), 2), std::invalid_argument);
    spec.cuts = {};
    EXPECT_THROW(gen_aux(spec, Rat(1), 2), std::invalid_argument);
}

ForcingOptions small_opts(int threads = 1) {
    ForcingOptions o;
    o.grid_density = 1;
    o.fill = FillOptions{64, -1, true, 200000};
    o.threads = threads;
    return o;
}

TEST(RunStep, FloorDoublingAndMarker) {
    ForcingState st = initial_state({2});
    StepResult r = run_step(st, 1, AuxFlowSpec{}, small_opts());
    EXPECT_EQ(r.grid.d_max, 0);
    const StepLog& lg = r.state.log.at(0);
    EXPECT_EQ(lg.d_n, 1);
    EXPECT_EQ(r.state.markers, (std::vector<int>{0, 1}));
    EXPECT_EQ(r.state.schedule.h(1), lg.top_edge * Rat(2));
    EXPECT_EQ(r.state.partitions.size(), 2u);
    EXPECT_EQ(r.certificates.size(), 1u);
    EXPECT_THROW(run_step(st, 2, AuxFlowSpec{}, small_opts()), std::invalid_argument);
    ForcingOptions bad = small_opts();
    bad.d_margin = Rat(1, 2);
    EXPECT_THROW(run_step(st, 1, AuxFlowSpec{}, bad), std::invalid_argument);
}

TEST(RunStep, ExhaustionCarriesStep) {
    ForcingState st = initial_state({2});
    st.partitions[0] = initial_partition(st.schedule, 2);
    ForcingOptions o = small_opts();
    o.fill.budget = 0;
    try {
        run_step(st, 1, AuxFlowSpec{}, o);
        FAIL() << "expected exhaustion";
    } catch (const GridBudgetExhausted& e) {
        EXPECT_EQ(e.step, 1);
    }
}

TEST(Build, OneStepEndToEnd) {
    BuildResult b = build_flow({2}, 1, {AuxFlowSpec{}}, small_opts());
    ASSERT_FALSE(b.certificates.empty());
    for (const auto& c : b.certificates) {
        EXPECT_TRUE(c.mass_ok);
        EXPECT_TRUE(c.contained_ok);
        EXPECT_TRUE(c.disjoint_ok);
        EXPECT_LT(Rat(1, 2), c.mass_fraction);
    }
    EXPECT_TRUE(b.report.verdict.ok());
    EXPECT_TRUE(b.report.strong_valid);
    ASSERT_EQ(b.report.marker_checks.size(), 1u);
    EXPECT_TRUE(b.report.marker_checks[0].doubled);
    EXPECT_GE(b.report.marker_checks[0].ratio_jump, Rat(2));
    Verdict v = check_certificates(b.state.schedule, b.state.markers, b.certificates, 2);
    EXPECT_TRUE(v.ok());
}

TEST(Check, EmptyListIsVacuous) {
    Verdict v = check_certificates(two_copies(), {0, 1}, {});
    EXPECT_TRUE(v.ok());
    EXPECT_EQ(v.checked, 0u);
}

// Hand-built certificates on a two-level schedule: one per quarter atom of
// F_0^2, each filling the atom onto itself at t = 1. Tampering with one part
// flags exactly that certificate.
std::vector<Certificate> quarter_certificates(const CFSchedule& s) {
    CFSchedule s2 = power_schedule(s, 2);
    std::vector<Certificate> out;
    for (const auto& atom : product_atoms(initial_partition(s, 2), 2)) {
        Certificate c;
        c.step = 1;
        c.p = 2;
        c.base_level = 0;
        c.delta = atom;
        c.delta_prime = atom;
        c.t = Rat(1);
        c.d_n = 1;
        c.parts = {lift(s2, Cylinder{0, atom}, 1), Cylinder{1, BoxSet(2)}};
        c.mass_fraction = Rat(1);
        c.mass_ok = c.contained_ok = c.disjoint_ok = true;
        c.grid = {Rat(1)};
        out.push_back(std::move(c));
    }
    return out;
}

TEST(Check, TamperingFlagsOnlyThatCertificate) {
    CFSchedule s = two_copies();
    const std::vector<int> markers{0, 1};
    auto certs = quarter_certificates(s);
    ASSERT_EQ(certs.size(), 4u);
    Verdict clean = check_certificates(s, markers, certs, 2);
    ASSERT_TRUE(clean.ok()) << clean.failures.front().reason;

    for (std::size_t victim = 0; victim < certs.size(); ++victim) {
        auto bad = certs;
        bad[victim].parts[0].base = translate(bad[victim].parts[0].base, Vec{Rat(1, 2), Rat(0)});
        Verdict v = check_certificates(s, markers, bad, 2);
        ASSERT_EQ(v.failures.size(), 1u);
        EXPECT_EQ(v.failures[0].index, victim);
    }

    auto bad = certs;
    bad[1].mass_fraction = Rat(3, 4);
    Verdict v = check_certificates(s, markers, bad);
    ASSERT_EQ(v.failures.size(), 1u);
    EXPECT_EQ(v.failures[0].index, 1u);

    bad = certs;
    bad[2].parts.pop_back();
    v = check_certificates(s, markers, bad);
    ASSERT_EQ(v.failures.size(), 1u);
    EXPECT_EQ(v.failures[0].index, 2u);

    bad = certs;
    bad[3].t = Rat(2);
    v = check_certificates(s, markers, bad);
    ASSERT_EQ(v.failures.size(), 1u);
    EXPECT_EQ(v.failures[0].index, 3u);

    // Markers inconsistent with D_n flag every certificate.
    v = check_certificates(s, {0, 2}, certs);
    EXPECT_EQ(v.failures.size(), 4u);
}

TEST(Build, DeterministicAcrossThreadWidths) {
    BuildResult a = build_flow({2}, 1, {AuxFlowSpec{}}, small_opts(1));
    BuildResult b = build_flow({2}, 1, {AuxFlowSpec{}}, small_opts(3));
    EXPECT_EQ(a.state.schedule, b.state.schedule);
    EXPECT_EQ(a.certificates, b.certificates);
}

TEST(Build, AutoPowerSequence) {
    EXPECT_EQ(auto_p_seq(6), (std::vector<int>{2, 2, 3, 2, 3, 4}));
    EXPECT_THROW(build_flow({2}, 2, {AuxFlowSpec{}}, small_opts()), std::invalid_argument);
    EXPECT_THROW(build_flow({2}, 1, {}, small_opts()), std::invalid_argument);
}

}  // namespace
}  // namespace cfforge
