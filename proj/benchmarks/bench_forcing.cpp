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

#include "cfforge/forcing.hpp"
#include "cfforge/orbit.hpp"

using namespace cfforge;

namespace {

ForcingOptions options(int threads) {
    ForcingOptions o;
    o.grid_density = 4;
    o.fill = FillOptions{64, -1, true, 1000000};
    o.threads = threads;
    return o;
}

void BM_BuildOneStep(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_flow({2}, 1, {AuxFlowSpec{}}, options(1)));
}
BENCHMARK(BM_BuildOneStep);

void BM_CheckCertificates(benchmark::State& state) {
    BuildResult b = build_flow({2}, 1, {AuxFlowSpec{}}, options(1));
    // Replicate the certificate list to get a measurable batch.
    std::vector<Certificate> certs;
    for (int k = 0; k < state.range(0); ++k) certs.insert(certs.end(), b.certificates.begin(), b.certificates.end());
    for (auto _ : state) benchmark::DoNotOptimize(check_certificates(b.state.schedule, b.state.markers, certs, 1));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(certs.size()));
}
BENCHMARK(BM_CheckCertificates)->Arg(1)->Arg(16);

void BM_FlowPoint(benchmark::State& state) {
    CFSchedule s = gen_aux(AuxFlowSpec{}, Rat(1), 10);
    auto pts = random_points(s, 256, 7);
    const Vec g{Rat(3, 7)};
    std::size_t i = 0;
    for (auto _ : state) {
        FiberPoint x = pts[i++ % pts.size()];
        for (int k = 0; k < 32; ++k) x = flow_point(s, x, g);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_FlowPoint);

}  // namespace

BENCHMARK_MAIN();
