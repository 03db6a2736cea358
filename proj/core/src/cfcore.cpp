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

#include "cfforge/cfcore.hpp"

#include <string>

namespace cfforge {

const char* to_string(Violation v) {
    switch (v) {
        case Violation::BadCube:
            return "BadCube";
        case Violation::Independence:
            return "IndependenceViolation";
        case Violation::Containment:
            return "ContainmentViolation";
        case Violation::StrongContainment:
            return "StrongContainmentViolation";
    }
    return "?";
}

ValidationError::ValidationError(Violation k, int lvl, const std::string& detail)
    : std::runtime_error(std::string(to_string(k)) + "(" + std::to_string(lvl) + "): " + detail), kind(k), level(lvl) {}

LevelOutOfRange::LevelOutOfRange(int level, int top)
    : std::out_of_range("level " + std::to_string(level) + " outside schedule levels 0.." + std::to_string(top)) {}

std::optional<ValidationIssue> find_violation(int dim, const std::vector<CFLevel>& levels, bool strong) {
    if (dim < 1) return ValidationIssue{Violation::BadCube, 0, "dimension must be positive"};
    if (levels.empty()) return ValidationIssue{Violation::BadCube, 0, "schedule has no levels"};
    const int top = static_cast<int>(levels.size()) - 1;
    for (int n = 0; n <= top; ++n) {
        const CFLevel& lv = levels[static_cast<std::size_t>(n)];
        if (lv.h.sign() <= 0) return ValidationIssue{Violation::BadCube, n, "edge h = " + lv.h.str() + " is not positive"};
        if (n == top) {
            if (!lv.c_next.empty()) {
                return ValidationIssue{Violation::BadCube, n, "top level carries translations but no next cube"};
            }
            break;
        }
        if (lv.c_next.size() < 2) return ValidationIssue{Violation::BadCube, n, "#C must exceed 1"};
        for (const auto& c : lv.c_next) {
            if (static_cast<int>(c.size()) != dim) {
                return ValidationIssue{Violation::BadCube, n, "translation " + to_string(c) + " has wrong dimension"};
            }
        }
        // F_n - F_n is the open cube (-h, h)^d, so independence means every
        // pair of distinct translations differs by at least h in max-norm.
        for (std::size_t i = 0; i < lv.c_next.size(); ++i) {
            for (std::size_t j = i + 1; j < lv.c_next.size(); ++j) {
                if (max_norm(lv.c_next[i] - lv.c_next[j]) < lv.h) {
                    return ValidationIssue{Violation::Independence, n,
                                           to_string(lv.c_next[i]) + " - " + to_string(lv.c_next[j]) +
                                               " lies in F - F"};
                }
            }
        }
        const Rat& next_h = levels[static_cast<std::size_t>(n + 1)].h;
        for (const auto& c : lv.c_next) {
            for (const auto& x : c) {
                if (x.sign() < 0 || next_h < x + lv.h) {
                    return ValidationIssue{Violation::Containment, n,
                                           "F + " + to_string(c) + " not inside [0," + next_h.str() + ")"};
                }
            }
        }
        if (strong) {
            for (const auto& c : lv.c_next) {
                for (const auto& x : c) {
                    if (next_h < x + lv.h + 1) {
                        return ValidationIssue{Violation::StrongContainment, n,
                                               "(1,...,1) + F + " + to_string(c) + " not inside [0," +
                                                   next_h.str() + ")"};
                    }
                }
            }
        }
    }
    return std::nullopt;
}

CFSchedule CFSchedule::validate(int dim, std::vector<CFLevel> levels, bool strong) {
    if (auto issue = find_violation(dim, levels, strong)) throw ValidationError(issue->kind, issue->level, issue->detail);
    return CFSchedule(dim, std::move(levels), strong);
}

const CFLevel& CFSchedule::level(int n) const {
    if (n < 0 || n > top()) throw LevelOutOfRange(n, top());
    return levels_[static_cast<std::size_t>(n)];
}

const std::vector<Vec>& CFSchedule::translations(int n) const {
    if (n < 1 || n > top()) throw LevelOutOfRange(n, top());
    return levels_[static_cast<std::size_t>(n - 1)].c_next;
}

BoxSet CFSchedule::cube(int n) const { return BoxSet::cube(dim_, h(n)); }

Rat CFSchedule::copies_up_to(int n) const {
    if (n < 0 || n > top()) throw LevelOutOfRange(n, top());
    Rat k(1);
    for (int i = 1; i <= n; ++i) k *= Rat(static_cast<std::int64_t>(translations(i).size()));
    return k;
}

CFSchedule CFSchedule::extended(std::vector<CFLevel> more) const {
    std::vector<CFLevel> all = levels_;
    all.insert(all.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    return validate(dim_, std::move(all), strong_);
}

Cylinder make_cylinder(const CFSchedule& s, int level, BoxSet base) {
    if (base.dim() != s.dim()) throw DimensionMismatch(s.dim(), base.dim());
    if (!is_subset(base, s.cube(level))) {
        throw std::invalid_argument("cylinder base is not contained in F_" + std::to_string(level));
    }
    return Cylinder{level, std::move(base)};
}

Rat cylinder_measure(const CFSchedule& s, const Cylinder& c) { return c.base.volume() / s.copies_up_to(c.level); }

BoxSet lift_base(const CFSchedule& s, const BoxSet& base, int from_level) {
    return translate_union(base, s.translations(from_level + 1));
}

Cylinder lift(const CFSchedule& s, const Cylinder& c, int m) {
    if (m > s.top()) throw LevelOutOfRange(m, s.top());
    if (m < c.level) throw std::invalid_argument("cannot lift to a lower level");
    BoxSet base = c.base;
    for (int k = c.level; k < m; ++k) base = lift_base(s, base, k);
    return Cylinder{m, std::move(base)};
}

ActionResult apply_tg(const CFSchedule& s, const Cylinder& c, const Vec& g, const Rat& eps) {
    if (eps.sign() <= 0) throw std::invalid_argument("eps must be positive");
    if (static_cast<int>(g.size()) != s.dim()) throw DimensionMismatch(s.dim(), static_cast<int>(g.size()));
    if (c.level > s.top()) throw LevelOutOfRange(c.level, s.top());
    BoxSet base = c.base;
    Vec minus_g = scale_vec(g, Rat(-1));
    for (int m = c.level;; ++m) {
        BoxSet inside = intersect(base, translate(s.cube(m), minus_g));
        BoxSet rest = subtract(base, inside);
        if (rest.volume() / s.copies_up_to(m) < eps) {
            return ActionResult{Cylinder{m, translate(inside, g)}, Cylinder{m, std::move(rest)}};
        }
        if (m == s.top()) break;
        base = lift_base(s, base, m);
    }
    throw ScheduleTooShort("translation by " + to_string(g) + " leaves remainder >= " + eps.str() + " at level " +
                           std::to_string(s.top()));
}

InfiniteMeasureReport check_infinite_measure(const CFSchedule& s, const Rat& factor) {
    InfiniteMeasureReport rep;
    bool monotone = true;
    for (int n = 0; n <= s.top(); ++n) {
        Rat vol(1);
        for (int i = 0; i < s.dim(); ++i) vol *= s.h(n);
        rep.ratios.push_back(vol / s.copies_up_to(n));
        if (n > 0 && rep.ratios[static_cast<std::size_t>(n)] < rep.ratios[static_cast<std::size_t>(n - 1)]) {
            monotone = false;
        }
    }
    rep.diverging = monotone && !(rep.ratios.back() < factor * rep.ratios.front());
    return rep;
}

CFSchedule power_schedule(const CFSchedule& s, int p, std::size_t max_translations) {
    if (p < 1) throw std::invalid_argument("power must be positive");
    if (p == 1) return s;
    std::vector<CFLevel> levels;
    levels.reserve(s.levels().size());
    for (const auto& lv : s.levels()) {
        CFLevel out{lv.h, {}};
        if (!lv.c_next.empty()) {
            std::size_t count = 1;
            for (int i = 0; i < p; ++i) {
                if (count > max_translations / lv.c_next.size()) {
                    throw PowerOverflow("#C^" + std::to_string(p) + " exceeds " + std::to_string(max_translations));
                }
                count *= lv.c_next.size();
            }
            out.c_next.reserve(count);
            std::vector<std::size_t> idx(static_cast<std::size_t>(p), 0);
            for (std::size_t k = 0; k < count; ++k) {
                Vec v;
                v.reserve(static_cast<std::size_t>(s.dim() * p));
                for (int i = 0; i < p; ++i) {
                    const Vec& part = lv.c_next[idx[static_cast<std::size_t>(i)]];
                    v.insert(v.end(), part.begin(), part.end());
                }
                out.c_next.push_back(std::move(v));
                for (int i = p - 1; i >= 0; --i) {
                    auto& d = idx[static_cast<std::size_t>(i)];
                    if (++d < lv.c_next.size()) break;
                    d = 0;
                }
            }
        }
        levels.push_back(std::move(out));
    }
    return CFSchedule::validate(s.dim() * p, std::move(levels), s.strong());
}

Vec diag_time(const Rat& t, int p, int d) {
    if (p < 1 || d < 1) throw std::invalid_argument("power and dimension must be positive");
    return Vec(static_cast<std::size_t>(p * d), t);
}

}  // namespace cfforge
