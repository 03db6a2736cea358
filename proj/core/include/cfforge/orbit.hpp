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

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cfforge/cfcore.hpp"

namespace cfforge {

/// A point of X given by its level-M coordinate. The unknown tail
/// c_{M+1}, c_{M+2}, ... is drawn from a deterministic stream keyed by
/// tail_seed and the absolute level.
struct FiberPoint {
    int level = 0;
    Vec coord;
    std::uint64_t tail_seed = 0;

    friend bool operator==(const FiberPoint&, const FiberPoint&) = default;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Index into C_k chosen for the tail at absolute level k.
std::size_t tail_choice(std::uint64_t seed, int k, std::size_t count);

/// coord + c_{level+1} + ... + c_m.
FiberPoint embed(const CFSchedule& s, const FiberPoint& x, int m);

/// Level-m coordinate of x for m below x.level, or nullopt when x lies in a
/// spacer of some intermediate cube.
std::optional<Vec> project(const CFSchedule& s, const FiberPoint& x, int m);

/// x ∈ [A]_n.
bool in_cylinder(const CFSchedule& s, const FiberPoint& x, const Cylinder& c);

/// T_g x: embeds until coord + g ∈ F_m, then translates.
FiberPoint flow_point(const CFSchedule& s, const FiberPoint& x, const Vec& g);

/// x and y are the same point of X.
bool same_point(const CFSchedule& s, const FiberPoint& x, const FiberPoint& y);

/// `count` points at level 0 with coordinates on the grid (1/denominator)Z.
std::vector<FiberPoint> random_points(const CFSchedule& s, std::size_t count, std::uint64_t seed,
                                      std::int64_t denominator = 1024);

struct SweepRow {
    std::size_t target = 0;
    std::size_t samples = 0;
    std::size_t hits = 0;
    std::size_t censored = 0;  ///< left the schedule before hitting
    Rat hit_fraction;          ///< hits / samples
    Rat mean_first_hit;        ///< over hitting samples; 0 when none
};

/// For each p-tuple in `sample`, iterates V_t = T_t x ... x T_t for j = 0..horizon
/// and records the first j with V_t^j(tuple) in each target (cylinders of
/// power_schedule(s, p)).
std::vector<SweepRow> sweep_stats(const CFSchedule& s, const Rat& t, int p,
                                  const std::vector<std::vector<FiberPoint>>& sample, int horizon,
                                  const std::vector<Cylinder>& targets, int threads = 1);

}  // namespace cfforge
