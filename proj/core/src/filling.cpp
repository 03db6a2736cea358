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

#include "cfforge/filling.hpp"

#include <algorithm>

#include "cfforge/parallel.hpp"

namespace cfforge {

BudgetExhausted::BudgetExhausted(std::size_t it, Rat acc, Rat tgt)
    : std::runtime_error("filling budget of " + std::to_string(it) + " sets exhausted at mass " + acc.str() +
                         " (need > " + tgt.str() + ")"),
      iterations(it),
      accumulated(std::move(acc)),
      target(std::move(tgt)) {}

BudgetExhausted::BudgetExhausted(const std::string& what, std::size_t it, Rat acc, Rat tgt)
    : std::runtime_error(what), iterations(it), accumulated(std::move(acc)), target(std::move(tgt)) {}

ComplexityExceeded::ComplexityExceeded(std::size_t n, int lvl, std::size_t it, Rat acc, Rat tgt)
    : BudgetExhausted("filling set needs " + std::to_string(n) + " boxes at level " + std::to_string(lvl) +
                          " after " + std::to_string(it) + " sets (mass " + acc.str() + ", need > " + tgt.str() + ")",
                      it, std::move(acc), std::move(tgt)),
      boxes(n),
      level(lvl) {}

GridBudgetExhausted::GridBudgetExhausted(const BudgetExhausted& inner, int a_, int b_, Rat t_)
    : BudgetExhausted(inner), a(a_), b(b_), t(std::move(t_)) {}

namespace {

// True when base + shift stays inside [0, h)^d.
bool fits(const BoxSet& base, const Vec& shift, const Rat& h) {
    if (base.empty()) return true;
    auto b = base.bounds();
    for (std::size_t i = 0; i < b.size(); ++i) {
        if ((b[i].first + shift[i]).sign() < 0) return false;
        if (h < b[i].second + shift[i]) return false;
    }
    return true;
}

}  // namespace

FillingResult fill(const CFSchedule& s, const Vec& q, const Cylinder& a, const Cylinder& b, const FillOptions& opts) {
    if (static_cast<int>(q.size()) != s.dim()) throw DimensionMismatch(s.dim(), static_cast<int>(q.size()));
    const int max_level = opts.max_level < 0 ? s.top() : std::min(opts.max_level, s.top());
    if (opts.lemma_mode) {
        if (!s.strong()) throw PreconditionError("structure-lemma mode needs a strongly validated schedule");
        for (const auto& x : q) {
            if (x.sign() < 0) throw PreconditionError("structure-lemma mode needs q >= 0, got " + to_string(q));
        }
        if (a.level != b.level) throw PreconditionError("structure-lemma mode needs A and B at the same level");
    }

    FillingResult r;
    r.q = q;
    r.a = a;
    r.b = b;
    r.q_bound = static_cast<int>(max_norm(q).floor().to_int64()) + 1;
    r.measure_a = cylinder_measure(s, a);
    Rat measure_b = cylinder_measure(s, b);
    if (r.measure_a != measure_b) {
        throw PreconditionError("mu(A) = " + r.measure_a.str() + " differs from mu(B) = " + measure_b.str());
    }
    if (r.measure_a.sign() <= 0) throw PreconditionError("mu(A) must be positive");
    const Rat half = r.measure_a / 2;

    int level = std::max(a.level, b.level);
    Cylinder la = lift(s, a, level);
    Cylinder lb = lift(s, b, level);
    BoxSet a_rest = la.base;  // A ∖ ⊔ A_j
    BoxSet b_rest = lb.base;  // B ∖ ⊔ S^j A_j
    Rat scale = s.copies_up_to(level);

    struct Part {
        int level;
        BoxSet base;
    };
    std::vector<Part> parts;
    Rat acc;
    for (std::size_t i = 0;; ++i) {
        if (i >= opts.budget) throw BudgetExhausted(opts.budget, acc, half);
        Vec shift = scale_vec(q, Rat(static_cast<std::int64_t>(i)));
        while (!fits(a_rest, shift, s.h(level))) {
            if (level >= max_level) {
                throw ScheduleTooShort("filling needs a level above " + std::to_string(max_level) + " at step " +
                                       std::to_string(i));
            }
            a_rest = lift_base(s, a_rest, level);
            b_rest = lift_base(s, b_rest, level);
            ++level;
            scale = s.copies_up_to(level);
            if (opts.max_boxes != 0) {
                std::size_t n = a_rest.box_count();
                if (n > opts.max_boxes) throw ComplexityExceeded(n, level, i, acc, half);
            }
        }
        BoxSet part = intersect(a_rest, translate(b_rest, scale_vec(shift, Rat(-1))));
        if (!part.empty()) {
            a_rest = subtract(a_rest, part);
            b_rest = subtract(b_rest, translate(part, shift));
            acc += part.volume() / scale;
        }
        parts.push_back(Part{level, std::move(part)});
        if (half < acc) {
            r.n_fill = static_cast<int>(i);
            break;
        }
    }

    r.work_level = level;
    r.filled = acc;
    r.lemma_level = a.level + r.q_bound * r.n_fill;
    r.parts.reserve(parts.size());
    for (auto& p : parts) {
        r.parts.push_back(lift(s, Cylinder{p.level, std::move(p.base)}, level));
    }
    if (opts.lemma_mode && r.work_level > r.lemma_level) {
        throw CertificateViolation("work level " + std::to_string(r.work_level) + " exceeds structure bound " +
                                   std::to_string(r.lemma_level));
    }
    return r;
}

std::vector<Cylinder> image_stack(const CFSchedule& s, const FillingResult& r) {
    const int level = r.work_level;
    BoxSet a_hat = lift(s, r.a, level).base;
    BoxSet b_hat = lift(s, r.b, level).base;
    BoxSet used_src(s.dim());
    BoxSet used_dst(s.dim());
    Rat total;
    std::vector<Cylinder> images;
    images.reserve(r.parts.size());
    for (std::size_t i = 0; i < r.parts.size(); ++i) {
        const Cylinder& part = r.parts[i];
        if (part.level != level) throw CertificateViolation("part " + std::to_string(i) + " not at work level");
        if (!is_subset(part.base, a_hat)) throw CertificateViolation("part " + std::to_string(i) + " leaves A");
        if (!disjoint(part.base, used_src)) throw CertificateViolation("part " + std::to_string(i) + " overlaps");
        Vec shift = scale_vec(r.q, Rat(static_cast<std::int64_t>(i)));
        if (!is_subset(part.base, translate(s.cube(level), scale_vec(shift, Rat(-1))))) {
            throw CertificateViolation("part " + std::to_string(i) + " is not translatable inside F");
        }
        BoxSet img = translate(part.base, shift);
        if (!is_subset(img, b_hat)) throw CertificateViolation("image " + std::to_string(i) + " leaves B");
        if (!disjoint(img, used_dst)) throw CertificateViolation("image " + std::to_string(i) + " overlaps");
        used_src = unite(used_src, part.base);
        used_dst = unite(used_dst, img);
        total += cylinder_measure(s, Cylinder{level, img});
        images.push_back(Cylinder{level, std::move(img)});
    }
    if (total != r.filled) {
        throw CertificateViolation("image mass " + total.str() + " differs from filled mass " + r.filled.str());
    }
    return images;
}

std::vector<Rat> time_grid(int n, int density) {
    if (n < 1 || density < 1) throw std::invalid_argument("grid needs n >= 1 and density >= 1");
    const Rat lo(1, n);
    const Rat hi(n);
    const Rat step(1, density);
    std::vector<Rat> grid;
    for (Rat t = lo; !(hi < t); t += step) grid.push_back(t);
    if (grid.back() != hi) grid.push_back(hi);
    return grid;
}

std::vector<GridFill> grid_fills(const CFSchedule& s_pow, const std::vector<BoxSet>& atoms, int n, int p,
                                 const GridOptions& opts) {
    if (atoms.empty()) throw std::invalid_argument("grid evaluation needs at least one atom");
    const std::vector<Rat> grid = time_grid(n, opts.density);
    const std::size_t na = atoms.size();
    const std::size_t nt = grid.size();
    std::vector<Cylinder> cyl;
    cyl.reserve(na);
    for (const auto& atom : atoms) cyl.push_back(make_cylinder(s_pow, 0, atom));
    const int d = s_pow.dim() / p;

    std::vector<GridFill> out(na * na * nt);
    parallel_for(out.size(), opts.threads, [&](std::size_t k) {
        int ia = static_cast<int>(k / (na * nt));
        int ib = static_cast<int>((k / nt) % na);
        int it = static_cast<int>(k % nt);
        try {
            FillingResult res = fill(s_pow, diag_time(grid[static_cast<std::size_t>(it)], p, d),
                                     cyl[static_cast<std::size_t>(ia)], cyl[static_cast<std::size_t>(ib)], opts.fill);
            out[k] = GridFill{GridEntry{ia, ib, it, res.n_fill}, std::move(res)};
        } catch (const BudgetExhausted& e) {
            throw GridBudgetExhausted(e, ia, ib, grid[static_cast<std::size_t>(it)]);
        }
    });
    return out;
}

GridMax summarize(const std::vector<GridFill>& fills, int n, int p, std::vector<Rat> grid) {
    GridMax g;
    g.p = p;
    g.n_step = n;
    g.grid = std::move(grid);
    g.table.reserve(fills.size());
    for (const auto& f : fills) {
        g.table.push_back(f.key);
        g.d_max = std::max(g.d_max, f.key.n_fill);
    }
    return g;
}

GridMax grid_max(const CFSchedule& s_pow, const std::vector<BoxSet>& atoms, int n, int p, const GridOptions& opts) {
    return summarize(grid_fills(s_pow, atoms, n, p, opts), n, p, time_grid(n, opts.density));
}

SemicontinuityReport semicontinuity_probe(const CFSchedule& s_pow, const Cylinder& a, const Cylinder& b,
                                          const Rat& t0, const std::vector<Rat>& radii, const FillOptions& opts) {
    if (t0.sign() <= 0) throw std::invalid_argument("probe time must be positive");
    auto n_at = [&](const Rat& t) { return fill(s_pow, Vec(static_cast<std::size_t>(s_pow.dim()), t), a, b, opts).n_fill; };
    SemicontinuityReport rep;
    rep.t0 = t0;
    rep.n_at_t0 = n_at(t0);
    for (const auto& r : radii) {
        ProbeRow row;
        row.radius = r;
        for (const Rat& t : {t0 - r, t0 + r}) {
            if (t.sign() <= 0) continue;
            ProbePoint pt{t, n_at(t)};
            if (pt.n_fill > rep.n_at_t0) row.flagged = true;
            row.neighbours.push_back(pt);
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace cfforge
