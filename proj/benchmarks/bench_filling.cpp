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

#include <benchmark/benchmark.h>

#include "cfforge/filling.hpp"
#include "cfforge/forcing.hpp"

using namespace cfforge;

namespace {

CFSchedule staircase(int levels) { return gen_aux(AuxFlowSpec{}, Rat(1), levels); }

// Two copies per level with a unit spacer: h_{k+1} = 2 h_k + 2.
CFSchedule doubling(int levels) {
    std::vector<CFLevel> lv;
    Rat h(1);
    for (int k = 0; k < levels; ++k) {
        lv.push_back(CFLevel{h, {Vec{Rat(0)}, Vec{h + Rat(1)}}});
        h = h * Rat(2) + Rat(2);
    }
    lv.push_back(CFLevel{h, {}});
    return CFSchedule::validate(1, std::move(lv), true);
}

// Half of F_0 filled onto the other half by a translation of 1/2.
void BM_FillHalf(benchmark::State& state) {
    CFSchedule s = staircase(6);
    Cylinder a{0, BoxSet::from_box(Box(Vec{Rat(0)}, Vec{Rat(1, 2)}))};
    Cylinder b{0, BoxSet::from_box(Box(Vec{Rat(1, 2)}, Vec{Rat(1)}))};
    const Rat q(static_cast<std::int64_t>(state.range(0)), 4);
    for (auto _ : state) benchmark::DoNotOptimize(fill(s, Vec{q}, a, b, FillOptions{64, -1, true}));
}
BENCHMARK(BM_FillHalf)->Arg(2)->Arg(3)->Arg(5);

void BM_FillPower(benchmark::State& state) {
    CFSchedule s = power_schedule(staircase(6), 2);
    Cylinder a{0, BoxSet::from_box(Box(Vec{Rat(0), Rat(0)}, Vec{Rat(1, 2), Rat(1)}))};
    Cylinder b{0, BoxSet::from_box(Box(Vec{Rat(1, 2), Rat(0)}, Vec{Rat(1), Rat(1)}))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(fill(s, diag_time(Rat(1, 2), 2), a, b, FillOptions{64, -1, true}));
    }
}
BENCHMARK(BM_FillPower);

void BM_GridMax(benchmark::State& state) {
    CFSchedule s = power_schedule(doubling(8), 2);
    std::vector<BoxSet> atoms{BoxSet::cube(2, Rat(1))};
    GridOptions o{static_cast<int>(state.range(0)), FillOptions{64, -1, true, 200000}, 1};
    for (auto _ : state) {
        try {
            benchmark::DoNotOptimize(grid_max(s, atoms, 2, 2, o));
        } catch (const std::exception& e) {
            state.SkipWithError(e.what());
            break;
        }
    }
}
BENCHMARK(BM_GridMax)->Arg(1)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
