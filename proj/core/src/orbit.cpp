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

#include "cfforge/orbit.hpp"

#include <random>

#include "cfforge/parallel.hpp"

namespace cfforge {
namespace {

bool inside_cube(const Vec& v, const Rat& h) {
    for (const auto& x : v) {
        if (x.sign() < 0 || !(x < h)) return false;
    }
    return true;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::size_t tail_choice(std::uint64_t seed, int k, std::size_t count) {
    std::uint64_t z = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(k)));
    return static_cast<std::size_t>(z % count);
}

FiberPoint embed(const CFSchedule& s, const FiberPoint& x, int m) {
    if (m > s.top()) throw LevelOutOfRange(m, s.top());
    if (m < x.level) throw std::invalid_argument("embed cannot lower the level");
    FiberPoint y = x;
    for (int k = x.level + 1; k <= m; ++k) {
        const auto& cs = s.translations(k);
        y.coord = y.coord + cs[tail_choice(x.tail_seed, k, cs.size())];
    }
    y.level = m;
    return y;
}

std::optional<Vec> project(const CFSchedule& s, const FiberPoint& x, int m) {
    if (m < 0 || m > x.level) throw std::invalid_argument("project needs 0 <= m <= level");
    Vec v = x.coord;
    for (int k = x.level; k > m; --k) {
        const Rat& h = s.h(k - 1);
        bool found = false;
        for (const auto& c : s.translations(k)) {
            Vec w = v - c;
            if (inside_cube(w, h)) {
                v = std::move(w);
                found = true;
                break;
            }
        }
        if (!found) return std::nullopt;
    }
    return v;
}

bool in_cylinder(const CFSchedule& s, const FiberPoint& x, const Cylinder& c) {
    if (x.level <= c.level) return c.base.contains(embed(s, x, c.level).coord);
    auto v = project(s, x, c.level);
    return v && c.base.contains(*v);
}

FiberPoint flow_point(const CFSchedule& s, const FiberPoint& x, const Vec& g) {
    if (static_cast<int>(g.size()) != s.dim()) throw DimensionMismatch(s.dim(), static_cast<int>(g.size()));
    FiberPoint y = x;
    for (;;) {
        Vec moved = y.coord + g;
        if (inside_cube(moved, s.h(y.level))) {
            y.coord = std::move(moved);
            return y;
        }
        if (y.level >= s.top()) {
            throw ScheduleTooShort("point leaves F_" + std::to_string(s.top()) + " under translation by " +
                                   to_string(g));
        }
        y = embed(s, y, y.level + 1);
    }
}

bool same_point(const CFSchedule& s, const FiberPoint& x, const FiberPoint& y) {
    if (x.tail_seed != y.tail_seed) return false;
    int m = std::max(x.level, y.level);
    return embed(s, x, m).coord == embed(s, y, m).coord;
}

std::vector<FiberPoint> random_points(const CFSchedule& s, std::size_t count, std::uint64_t seed,
                                      std::int64_t denominator) {
    std::mt19937_64 rng(seed);
    // h_0 * denominator grid cells per axis; the cube edge may be rational.
    Rat cells = (s.h(0) * Rat(denominator)).floor();
    std::uint64_t span = static_cast<std::uint64_t>(cells.to_int64());
    if (span == 0) throw std::invalid_argument("sample grid is coarser than F_0");
    std::vector<FiberPoint> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        FiberPoint x;
        x.level = 0;
        for (int j = 0; j < s.dim(); ++j) {
            x.coord.push_back(Rat(static_cast<std::int64_t>(rng() % span), denominator));
        }
        x.tail_seed = rng();
        out.push_back(std::move(x));
    }
    return out;
}

std::vector<SweepRow> sweep_stats(const CFSchedule& s, const Rat& t, int p,
                                  const std::vector<std::vector<FiberPoint>>& sample, int horizon,
                                  const std::vector<Cylinder>& targets, int threads) {
    if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
    if (p < 1) throw std::invalid_argument("power must be positive");
    const Vec g(static_cast<std::size_t>(s.dim()), t);
    const int d = s.dim();
    for (const auto& c : targets) {
        if (c.base.dim() != d * p) throw DimensionMismatch(d * p, c.base.dim());
    }

    struct Outcome {
        std::vector<int> first_hit;  // -1 none, -2 censored
    };
    std::vector<Outcome> res(sample.size());
    parallel_for(sample.size(), threads, [&](std::size_t k) {
        const auto& tuple = sample[k];
        if (static_cast<int>(tuple.size()) != p) throw std::invalid_argument("sample tuple size differs from p");
        Outcome o;
        o.first_hit.assign(targets.size(), -1);
        std::vector<FiberPoint> cur = tuple;
        std::size_t open = targets.size();
        for (int j = 0; j <= horizon && open > 0; ++j) {
            for (std::size_t ti = 0; ti < targets.size(); ++ti) {
                if (o.first_hit[ti] != -1) continue;
                const Cylinder& c = targets[ti];
                Vec joint;
                bool ok = true;
                for (const auto& x : cur) {
                    std::optional<Vec> v =
                        x.level <= c.level ? std::optional<Vec>(embed(s, x, c.level).coord) : project(s, x, c.level);
                    if (!v) {
                        ok = false;
                        break;
                    }
                    joint.insert(joint.end(), v->begin(), v->end());
                }
                ok = ok && c.base.contains(joint);
                if (ok) {
                    o.first_hit[ti] = j;
                    --open;
                }
            }
            if (j == horizon || open == 0) break;
            try {
                for (auto& x : cur) x = flow_point(s, x, g);
            } catch (const ScheduleTooShort&) {
                for (auto& v : o.first_hit) {
                    if (v == -1) v = -2;
                }
                break;
            }
        }
        res[k] = std::move(o);
    });

    std::vector<SweepRow> rows(targets.size());
    for (std::size_t ti = 0; ti < targets.size(); ++ti) {
        SweepRow& r = rows[ti];
        r.target = ti;
        r.samples = sample.size();
        std::int64_t total = 0;
        for (const auto& o : res) {
            int v = o.first_hit[ti];
            if (v >= 0) {
                ++r.hits;
                total += v;
            } else if (v == -2) {
                ++r.censored;
            }
        }
        if (r.samples > 0) {
            r.hit_fraction = Rat(static_cast<std::int64_t>(r.hits), static_cast<std::int64_t>(r.samples));
        }
        if (r.hits > 0) r.mean_first_hit = Rat(total, static_cast<std::int64_t>(r.hits));
    }
    return rows;
}

}  // namespace cfforge
