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

#include <functional>

#include "cfforge/json_io.hpp"
#include "support/oracles.hpp"

namespace cfforge {
namespace {

using io::json;

std::string error_path(const std::function<void()>& f) {
    try {
        f();
    } catch (const io::JsonError& e) {
        return e.path;
    }
    return "<no error>";
}

TEST(Json, RationalForms) {
    EXPECT_EQ(io::rat_from(json("3/4")), Rat(3, 4));
    EXPECT_EQ(io::rat_from(json(5)), Rat(5));
    EXPECT_EQ(io::to_json(Rat(-1, 2)), json("-1/2"));
    EXPECT_EQ(error_path([] { io::rat_from(json("1/0"), "$.h"); }), "$.h");
    EXPECT_EQ(error_path([] { io::rat_from(json(0.5), "$.x"); }), "$.x");
}

TEST(Json, ScheduleRoundTrip) {
    testing::Rng rng(1);
    for (int trial = 0; trial < 30; ++trial) {
        CFSchedule s = testing::random_schedule(rng, static_cast<int>(testing::uniform(rng, 1, 2)), 4);
        EXPECT_EQ(io::schedule_from(json::parse(io::dump(io::to_json(s)))), s);
    }
}

TEST(Json, ScheduleErrorsNameTheField) {
    json j = {{"dim", 1},
              {"strong", false},
              {"levels", json::array({json{{"h", "1"}, {"C_next", json::array({json::array({"0"}), json::array({"2"})})}},
                                      json{{"h", "5"}, {"C_next", json::array()}}})}};
    EXPECT_NO_THROW(io::schedule_from(j));
    json missing = j;
    missing["levels"][1].erase("h");
    EXPECT_EQ(error_path([&] { io::schedule_from(missing); }), "$.levels[1].h");
    json bad = j;
    bad["levels"][0]["C_next"][1][0] = "x";
    EXPECT_EQ(error_path([&] { io::schedule_from(bad); }), "$.levels[0].C_next[1][0]");
    json overlap = j;
    overlap["levels"][0]["C_next"][1][0] = "1/2";
    EXPECT_THROW(io::schedule_from(overlap), ValidationError);
}

TEST(Json, BoxSetAndCylinderRoundTrip) {
    testing::Rng rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        int dim = static_cast<int>(testing::uniform(rng, 1, 3));
        BoxSet b = BoxSet::canonicalize(testing::random_boxes(rng, dim, 4, 0, 4, 5), dim);
        EXPECT_EQ(io::boxset_from(io::to_json(b)), b);
        Cylinder c{static_cast<int>(testing::uniform(rng, 0, 3)), b};
        EXPECT_EQ(io::cylinder_from(io::to_json(c)), c);
    }
    EXPECT_EQ(error_path([] { io::boxset_from(json{{"dim", 1}}); }), "$.boxes");
}

TEST(Json, AuxSpecRoundTrip) {
    AuxFlowSpec a;
    a.cuts = {2, 3};
    a.gap = {Rat(1, 2)};
    a.depth = 5;
    EXPECT_EQ(io::aux_from(io::to_json(a)), a);
    auto list = io::aux_list_from(json::array({io::to_json(a), io::to_json(AuxFlowSpec{})}));
    ASSERT_EQ(list.size(), 2u);
    EXPECT_EQ(list[1], AuxFlowSpec{});
    EXPECT_EQ(io::aux_list_from(io::to_json(a)).size(), 1u);
}

TEST(Json, FlowAndCertificatesRoundTrip) {
    ForcingOptions o;
    o.grid_density = 1;
    BuildResult b = build_flow({2}, 1, {AuxFlowSpec{}}, o);
    io::FlowFile f = io::flow_from(json::parse(io::dump(io::flow_to_json(b.state))));
    EXPECT_EQ(f.schedule, b.state.schedule);
    EXPECT_EQ(f.markers, b.state.markers);
    EXPECT_EQ(f.p_seq, b.state.p_seq);
    EXPECT_EQ(f.d_values, b.report.d_values);
    auto certs = io::certificates_from(json::parse(io::dump(io::certificates_to_json(b.certificates))));
    EXPECT_EQ(certs, b.certificates);
    json broken = io::certificates_to_json(b.certificates);
    broken["certificates"][0]["parts"][0].erase("level");
    EXPECT_EQ(error_path([&] { io::certificates_from(broken); }), "$.certificates[0].parts[0].level");
}

TEST(Json, GridMaxRoundTrip) {
    GridMax g;
    g.p = 2;
    g.n_step = 2;
    g.grid = time_grid(2, 2);
    g.table = {GridEntry{0, 1, 2, 3}, GridEntry{1, 0, 0, 1}};
    g.d_max = 3;
    GridMax back = io::gridmax_from(io::to_json(g));
    EXPECT_EQ(back.grid, g.grid);
    EXPECT_EQ(back.d_max, 3);
    ASSERT_EQ(back.table.size(), 2u);
    EXPECT_EQ(back.table[0].t, 2);
    EXPECT_EQ(back.table[0].n_fill, 3);
}

}  // namespace
}  // namespace cfforge
