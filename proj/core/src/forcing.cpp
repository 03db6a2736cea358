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

#include "cfforge/forcing.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "cfforge/parallel.hpp"

namespace cfforge {
namespace {

Rat ceil_rat(const Rat& x) { return -((-x).floor()); }

Box interval(const Rat& lo, const Rat& hi) { return Box(Vec{lo}, Vec{hi}); }

// Cuts [lo, hi) into k equal pieces.
void split_into(std::vector<Box>& out, const Rat& lo, const Rat& hi, std::int64_t k) {
    Rat step = (hi - lo) / Rat(k);
    for (std::int64_t i = 0; i < k; ++i) out.push_back(interval(lo + step * Rat(i), lo + step * Rat(i + 1)));
}

template <class T>
const T& stage(const std::vector<T>& v, int k, const char* name) {
    if (v.empty()) throw std::invalid_argument(std::string("aux spec field ") + name + " is empty");
    return v[std::min(static_cast<std::size_t>(k), v.size() - 1)];
}

}  // namespace

Rat Partition::uniform_length() const {
    if (atoms.empty()) return Rat(0);
    Rat len = atoms.front().hi[0] - atoms.front().lo[0];
    for (const auto& a : atoms) {
        if (a.hi[0] - a.lo[0] != len) return Rat(0);
    }
    return len;
}

Rat Partition::mesh() const {
    Rat m;
    for (const auto& a : atoms) m = std::max(m, a.hi[0] - a.lo[0]);
    return m;
}

Partition initial_partition(const CFSchedule& s, int pieces) {
    if (s.dim() != 1) throw DimensionMismatch(1, s.dim());
    if (pieces < 1) throw std::invalid_argument("initial partition needs at least one piece");
    Partition p;
    p.level = 0;
    split_into(p.atoms, Rat(0), s.h(0), pieces);
    return p;
}

Partition make_partition(const CFSchedule& s, int n, const Partition& prev) {
    if (s.dim() != 1) throw DimensionMismatch(1, s.dim());
    if (n < 1 || prev.level != n - 1) throw std::invalid_argument("partition levels must be consecutive");
    const Rat prev_len = prev.uniform_length();
    // Common target length when the previous partition is uniform.
    std::int64_t k = 0;
    Rat atom_len;
    if (prev_len.sign() > 0) {
        k = std::max<std::int64_t>(1, ceil_rat(prev_len * Rat(n)).to_int64());
        atom_len = prev_len / Rat(k);
    }
    auto pieces_for = [&](const Rat& len) -> std::int64_t {
        if (atom_len.sign() > 0) {
            Rat q = len / atom_len;
            if (q.is_integer()) return q.to_int64();
        }
        return std::max<std::int64_t>(1, ceil_rat(len * Rat(n)).to_int64());
    };

    std::vector<Rat> offsets;
    for (const auto& c : s.translations(n)) offsets.push_back(c[0]);
    std::sort(offsets.begin(), offsets.end());
    const Rat& h_prev = s.h(n - 1);

    Partition out;
    out.level = n;
    Rat cursor(0);
    for (const auto& c : offsets) {
        if (cursor < c) split_into(out.atoms, cursor, c, pieces_for(c - cursor));
        for (const auto& a : prev.atoms) {
            Rat lo = a.lo[0] + c;
            Rat hi = a.hi[0] + c;
            split_into(out.atoms, lo, hi, k > 0 ? k : pieces_for(hi - lo));
        }
        cursor = c + h_prev;
    }
    if (cursor < s.h(n)) split_into(out.atoms, cursor, s.h(n), pieces_for(s.h(n) - cursor));
    return out;
}

PartitionIssue check_partition(const CFSchedule& s, const Partition& p, const Partition* next) {
    PartitionIssue r;
    Rat cursor(0);
    for (const auto& a : p.atoms) {
        if (a.dim() != 1 || a.lo[0] != cursor) r.cover = false;
        cursor = a.hi[0];
    }
    if (cursor != s.h(p.level)) r.cover = false;
    if (p.level >= 1 && Rat(1, p.level) < p.mesh()) r.mesh = false;
    if (next != nullptr) {
        std::set<Rat> cuts;
        for (const auto& a : next->atoms) {
            cuts.insert(a.lo[0]);
            cuts.insert(a.hi[0]);
        }
        for (const auto& a : p.atoms) {
            for (const auto& c : s.translations(p.level + 1)) {
                if (!cuts.contains(a.lo[0] + c[0]) || !cuts.contains(a.hi[0] + c[0])) r.refinement = false;
            }
        }
    }
    return r;
}

std::vector<BoxSet> product_atoms(const Partition& part, int p) {
    if (p < 1) throw std::invalid_argument("power must be positive");
    const std::size_t na = part.atoms.size();
    std::size_t total = 1;
    for (int i = 0; i < p; ++i) total *= na;
    std::vector<BoxSet> out;
    out.reserve(total);
    std::vector<std::size_t> idx(static_cast<std::size_t>(p), 0);
    for (std::size_t k = 0; k < total; ++k) {
        Vec lo;
        Vec hi;
        for (int i = 0; i < p; ++i) {
            const Box& a = part.atoms[idx[static_cast<std::size_t>(i)]];
            lo.push_back(a.lo[0]);
            hi.push_back(a.hi[0]);
        }
        out.push_back(BoxSet::from_box(Box(std::move(lo), std::move(hi))));
        for (int i = p - 1; i >= 0; --i) {
            auto& d = idx[static_cast<std::size_t>(i)];
            if (++d < na) break;
            d = 0;
        }
    }
    return out;
}

CFSchedule gen_aux(const AuxFlowSpec& spec, const Rat& base_h, int levels) {
    if (levels < 0) throw std::invalid_argument("aux depth must be non-negative");
    std::vector<CFLevel> out;
    Rat h = base_h;
    for (int k = 0; k < levels; ++k) {
        int r = stage(spec.cuts, k, "cuts");
        if (r < 2) throw std::invalid_argument("aux stage " + std::to_string(k) + " needs at least 2 cuts");
        const Rat& gap = stage(spec.gap, k, "gap");
        const Rat& lin = stage(spec.stair_lin, k, "stair_lin");
        const Rat& quad = stage(spec.stair_quad, k, "stair_quad");
        const Rat& slack = stage(spec.slack, k, "slack");
        if (slack.sign() < 0) throw std::invalid_argument("aux stage " + std::to_string(k) + " has negative slack");
        CFLevel lv{h, {}};
        Rat last;
        for (int i = 0; i < r; ++i) {
            Rat ii(i);
            Rat c = ii * (h + gap) + lin * ii + quad * ii * Rat(i - 1) / Rat(2);
            lv.c_next.push_back(Vec{c});
            last = std::max(last, c);
        }
        out.push_back(std::move(lv));
        h = last + h + Rat(1) + slack;
    }
    out.push_back(CFLevel{h, {}});
    return CFSchedule::validate(1, std::move(out), true);
}

Rat aux_mass_ratio(const CFSchedule& aux) {
    Rat best;
    for (int k = 0; k <= aux.top(); ++k) best = std::max(best, aux.h(k) / aux.copies_up_to(k));
    return best;
}

ForcingState initial_state(std::vector<int> p_seq) {
    ForcingState st;
    st.p_seq = std::move(p_seq);
    st.partitions.push_back(initial_partition(st.schedule, 1));
    return st;
}

StepResult run_step(const ForcingState& state, int n, const AuxFlowSpec& aux, const ForcingOptions& opts) {
    if (n != static_cast<int>(state.markers.size())) {
        throw std::invalid_argument("step " + std::to_string(n) + " does not follow the recorded markers");
    }
    if (static_cast<int>(state.p_seq.size()) < n) throw std::invalid_argument("p sequence shorter than step count");
    const int p = state.p_seq[static_cast<std::size_t>(n - 1)];
    if (p < 2) throw std::invalid_argument("powers must be at least 2");
    if (opts.d_margin < Rat(1)) throw std::invalid_argument("d-margin must be at least 1");
    const int base = state.markers.back();
    if (state.schedule.top() != base) throw std::invalid_argument("schedule top does not match the last marker");

    const Rat base_h = state.schedule.h(base);
    CFSchedule aux_s = gen_aux(aux, base_h, std::max(aux.depth, 1));
    CFSchedule aux_pow = power_schedule(aux_s, p);

    const Partition& part0 = state.partitions[static_cast<std::size_t>(base)];
    if (part0.uniform_length().sign() == 0) throw PreconditionError("partition atoms at the marker differ in length");
    std::vector<BoxSet> atoms = product_atoms(part0, p);

    GridOptions gopts;
    gopts.density = opts.grid_density;
    gopts.fill = opts.fill;
    gopts.fill.lemma_mode = true;
    gopts.threads = opts.threads;
    std::vector<GridFill> fills;
    try {
        fills = grid_fills(aux_pow, atoms, n, p, gopts);
    } catch (GridBudgetExhausted& e) {
        e.step = n;
        throw;
    }
    std::vector<Rat> grid = time_grid(n, opts.grid_density);
    GridMax gm = summarize(fills, n, p, grid);

    const int d_n = std::max(1, static_cast<int>(ceil_rat(Rat(gm.d_max) * opts.d_margin).to_int64()));
    const int graft = n * d_n;
    if (aux_s.top() < graft) aux_s = gen_aux(aux, base_h, graft);
    for (const auto& f : fills) {
        if (f.result.work_level > graft) {
            throw CertificateViolation("work level " + std::to_string(f.result.work_level) + " exceeds n*D_n = " +
                                       std::to_string(graft));
        }
    }

    std::vector<CFLevel> levels = state.schedule.levels();
    levels[static_cast<std::size_t>(base)].c_next = aux_s.level(0).c_next;
    for (int k = 1; k < graft; ++k) levels.push_back(aux_s.level(k));
    const Rat top_edge = aux_s.h(graft);
    levels.push_back(CFLevel{top_edge * Rat(2), {}});

    StepResult out;
    out.state = state;
    out.state.schedule = CFSchedule::validate(1, std::move(levels), true);
    for (int k = 1; k <= graft; ++k) {
        out.state.partitions.push_back(
            make_partition(out.state.schedule, base + k, out.state.partitions.back()));
    }
    out.state.markers.push_back(base + graft);

    out.certificates.resize(fills.size());
    parallel_for(fills.size(), opts.threads, [&](std::size_t k) {
        const GridFill& f = fills[k];
        const FillingResult& r = f.result;
        Certificate c;
        c.step = n;
        c.p = p;
        c.a = f.key.a;
        c.b = f.key.b;
        c.base_level = base;
        c.delta = atoms[static_cast<std::size_t>(f.key.a)];
        c.delta_prime = atoms[static_cast<std::size_t>(f.key.b)];
        c.t = grid[static_cast<std::size_t>(f.key.t)];
        c.n_fill = r.n_fill;
        c.d_n = d_n;
        const int lvl = base + r.work_level;
        for (int i = 0; i <= d_n; ++i) {
            if (static_cast<std::size_t>(i) < r.parts.size()) {
                c.parts.push_back(Cylinder{lvl, r.parts[static_cast<std::size_t>(i)].base});
            } else {
                c.parts.push_back(Cylinder{lvl, BoxSet(p)});
            }
        }
        c.mass_fraction = r.filled / r.measure_a;
        c.mass_ok = Rat(1, 2) < c.mass_fraction;
        try {
            image_stack(aux_pow, r);
            c.contained_ok = true;
            c.disjoint_ok = true;
        } catch (const CertificateViolation&) {
            c.contained_ok = false;
            c.disjoint_ok = false;
        }
        c.grid = grid;
        out.certificates[k] = std::move(c);
    });

    StepLog log;
    log.n = n;
    log.p = p;
    log.grid_d = gm.d_max;
    log.d_n = d_n;
    log.grid = grid;
    log.aux = aux;
    log.first_grafted = base + 1;
    log.marker = base + graft;
    log.top_edge = top_edge;
    log.certificates = out.certificates.size();
    out.state.log.push_back(std::move(log));
    out.grid = std::move(gm);
    return out;
}

namespace {

std::optional<std::string> check_one(const std::map<int, CFSchedule>& powers,
                                     const std::vector<int>& markers, const Certificate& c) {
    if (c.step < 1 || c.step >= static_cast<int>(markers.size())) return "step outside the recorded markers";
    const int base = markers[static_cast<std::size_t>(c.step - 1)];
    const int marker = markers[static_cast<std::size_t>(c.step)];
    if (c.base_level != base) return "base level differs from m_{n-1}";
    if (c.d_n < 1 || marker - base != c.step * c.d_n) return "marker gap differs from n*D_n";
    if (c.parts.size() != static_cast<std::size_t>(c.d_n) + 1) return "part count differs from D_n + 1";
    if (c.t < Rat(1, c.step) || Rat(c.step) < c.t) return "time outside [1/n, n]";
    if (!(c.mass_ok && c.contained_ok && c.disjoint_ok)) return "recorded checks are not all true";
    auto it = powers.find(c.p);
    if (it == powers.end()) return "power not available";
    const CFSchedule& s = it->second;
    if (c.delta.dim() != s.dim() || c.delta_prime.dim() != s.dim()) return "atom dimension differs from p";
    if (!is_subset(c.delta, s.cube(base)) || !is_subset(c.delta_prime, s.cube(base))) {
        return "atoms are not inside F_{m_{n-1}}^p";
    }
    const int lvl = c.parts.front().level;
    if (lvl < base || lvl > marker) return "parts are not m_n-cylinders";
    Cylinder d0{base, c.delta};
    Cylinder d1{base, c.delta_prime};
    const Rat mu = cylinder_measure(s, d0);
    if (mu != cylinder_measure(s, d1)) return "atoms differ in measure";
    BoxSet src = lift(s, d0, lvl).base;
    BoxSet dst = lift(s, d1, lvl).base;
    BoxSet cube = s.cube(lvl);
    BoxSet used_src(s.dim());
    BoxSet used_dst(s.dim());
    Rat mass;
    for (std::size_t i = 0; i < c.parts.size(); ++i) {
        const Cylinder& part = c.parts[i];
        const std::string tag = "part " + std::to_string(i);
        if (part.level != lvl) return tag + " is at a different level";
        if (part.base.dim() != s.dim()) return tag + " has the wrong dimension";
        if (!is_subset(part.base, src)) return tag + " is not inside [Δ]";
        if (!disjoint(part.base, used_src)) return tag + " overlaps an earlier part";
        Vec shift = diag_time(c.t * Rat(static_cast<std::int64_t>(i)), c.p);
        BoxSet img = translate(part.base, shift);
        if (!is_subset(img, cube)) return tag + " leaves the cube under V_t^i";
        if (!is_subset(img, dst)) return "image of " + tag + " is not inside [Δ']";
        if (!disjoint(img, used_dst)) return "image of " + tag + " overlaps an earlier image";
        used_src = unite(used_src, part.base);
        used_dst = unite(used_dst, img);
        mass += cylinder_measure(s, part);
    }
    Rat fraction = mass / mu;
    if (fraction != c.mass_fraction) return "recomputed mass " + fraction.str() + " differs from " + c.mass_fraction.str();
    if (!(Rat(1, 2) < fraction)) return "mass fraction " + fraction.str() + " is not above 1/2";
    return std::nullopt;
}

}  // namespace

Verdict check_certificates(const CFSchedule& main, const std::vector<int>& markers,
                           const std::vector<Certificate>& certs, int threads) {
    std::map<int, CFSchedule> powers;
    for (const auto& c : certs) {
        if (c.p >= 1 && !powers.contains(c.p)) powers.emplace(c.p, power_schedule(main, c.p));
    }
    std::vector<std::optional<std::string>> res(certs.size());
    parallel_for(certs.size(), threads, [&](std::size_t k) {
        try {
            res[k] = check_one(powers, markers, certs[k]);
        } catch (const std::exception& e) {
            res[k] = std::string("check raised: ") + e.what();
        }
    });
    Verdict v;
    v.checked = certs.size();
    for (std::size_t k = 0; k < res.size(); ++k) {
        if (res[k]) v.failures.push_back(CertificateFailure{k, *res[k]});
    }
    return v;
}

std::vector<int> auto_p_seq(int steps) {
    std::vector<int> out;
    for (int block = 1; static_cast<int>(out.size()) < steps; ++block) {
        for (int p = 2; p <= block + 1 && static_cast<int>(out.size()) < steps; ++p) out.push_back(p);
    }
    return out;
}

BuildResult build_flow(const std::vector<int>& p_seq, int steps, const std::vector<AuxFlowSpec>& aux_specs,
                       const ForcingOptions& opts) {
    if (steps < 1) throw std::invalid_argument("steps must be at least 1");
    if (aux_specs.empty()) throw std::invalid_argument("at least one aux spec is required");
    if (static_cast<int>(p_seq.size()) < steps) throw std::invalid_argument("p sequence shorter than step count");
    BuildResult out;
    out.state = initial_state(p_seq);
    for (int n = 1; n <= steps; ++n) {
        const AuxFlowSpec& spec = aux_specs[std::min(static_cast<std::size_t>(n - 1), aux_specs.size() - 1)];
        StepResult r = run_step(out.state, n, spec, opts);
        out.state = std::move(r.state);
        std::move(r.certificates.begin(), r.certificates.end(), std::back_inserter(out.certificates));
    }

    const CFSchedule& s = out.state.schedule;
    BuildReport& rep = out.report;
    rep.markers = out.state.markers;
    for (const auto& lg : out.state.log) rep.d_values.push_back(lg.d_n);
    rep.ratios = check_infinite_measure(s, Rat(2)).ratios;
    for (const auto& lg : out.state.log) {
        const int m = lg.marker;
        MarkerCheck mc;
        mc.level = m;
        mc.ratio_jump = rep.ratios[static_cast<std::size_t>(m)] / rep.ratios[static_cast<std::size_t>(m - 1)];
        mc.doubled = s.h(m) == lg.top_edge * Rat(2);
        const Rat copies(static_cast<std::int64_t>(s.translations(m).size()));
        mc.strict_growth = Rat(2) * s.h(m - 1) * copies < s.h(m);
        rep.marker_checks.push_back(mc);
    }
    rep.strong_valid = s.strong() && !find_violation(s.dim(), s.levels(), true).has_value();
    rep.verdict = check_certificates(s, out.state.markers, out.certificates, opts.threads);
    return out;
}

}  // namespace cfforge
