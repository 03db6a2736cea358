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

#include <random>

#include "cfforge/boxset.hpp"
#include "cfforge/cfcore.hpp"

using namespace cfforge;

namespace {

// n random boxes in [0, 8)^dim with endpoints on (1/16)Z.
BoxSet scatter(int dim, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Box> boxes;
    for (int k = 0; k < n; ++k) {
        Vec lo;
        Vec hi;
        for (int i = 0; i < dim; ++i) {
            std::int64_t a = static_cast<std::int64_t>(rng() % 112);
            std::int64_t b = a + 1 + static_cast<std::int64_t>(rng() % 16);
            lo.push_back(Rat(a, 16));
            hi.push_back(Rat(b, 16));
        }
        boxes.emplace_back(std::move(lo), std::move(hi));
    }
    return BoxSet::canonicalize(boxes, dim);
}

void BM_Canonicalize(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const int n = static_cast<int>(state.range(1));
    std::vector<Box> boxes = scatter(dim, n, 1).boxes();
    for (auto _ : state) benchmark::DoNotOptimize(BoxSet::canonicalize(boxes, dim));
}
BENCHMARK(BM_Canonicalize)->Args({1, 64})->Args({2, 32})->Args({3, 16});

void BM_Unite(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    BoxSet a = scatter(dim, static_cast<int>(state.range(1)), 2);
    BoxSet b = scatter(dim, static_cast<int>(state.range(1)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(unite(a, b));
    state.counters["boxes"] = static_cast<double>(a.box_count() + b.box_count());
}
BENCHMARK(BM_Unite)->Args({1, 64})->Args({2, 32})->Args({3, 16});

void BM_Subtract(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    BoxSet a = scatter(dim, static_cast<int>(state.range(1)), 4);
    BoxSet b = scatter(dim, static_cast<int>(state.range(1)), 5);
    for (auto _ : state) benchmark::DoNotOptimize(subtract(a, b));
}
BENCHMARK(BM_Subtract)->Args({1, 64})->Args({2, 32})->Args({3, 16});

void BM_Lift(benchmark::State& state) {
    const int levels = static_cast<int>(state.range(0));
    std::vector<CFLevel> lv;
    Rat h(1);
    for (int n = 0; n < levels; ++n) {
        lv.push_back(CFLevel{h, {Vec{Rat(0), Rat(0)}, Vec{h + 1, Rat(0)}, Vec{Rat(0), h + 1}}});
        h = Rat(2) * h + Rat(3);
    }
    lv.push_back(CFLevel{h, {}});
    CFSchedule s = CFSchedule::validate(2, lv, true);
    Cylinder c{0, BoxSet::from_box(Box(Vec{Rat(0), Rat(0)}, Vec{Rat(1, 2), Rat(1)}))};
    for (auto _ : state) benchmark::DoNotOptimize(lift(s, c, levels));
}
BENCHMARK(BM_Lift)->DenseRange(2, 6, 2);

}  // namespace

BENCHMARK_MAIN();
