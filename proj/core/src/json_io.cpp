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

#include "cfforge/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cfforge::io {

JsonError::JsonError(const std::string& p, const std::string& what)
    : std::runtime_error("field " + p + ": " + what), path(p) {}

namespace {

const json& field(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw JsonError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw JsonError(path + "." + key, "missing");
    return *it;
}

const json& array_at(const json& j, const std::string& path) {
    if (!j.is_array()) throw JsonError(path, "expected an array");
    return j;
}

int int_from(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw JsonError(path, "expected an integer");
    return j.get<int>();
}

bool bool_from(const json& j, const std::string& path) {
    if (!j.is_boolean()) throw JsonError(path, "expected a boolean");
    return j.get<bool>();
}

std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

std::vector<int> ints_from(const json& j, const std::string& path) {
    std::vector<int> out;
    const json& a = array_at(j, path);
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(int_from(a[i], idx(path, i)));
    return out;
}

std::vector<Rat> rats_from(const json& j, const std::string& path) {
    std::vector<Rat> out;
    const json& a = array_at(j, path);
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(rat_from(a[i], idx(path, i)));
    return out;
}

json rats_to_json(const std::vector<Rat>& v) {
    json a = json::array();
    for (const auto& r : v) a.push_back(to_json(r));
    return a;
}

}  // namespace

json to_json(const Rat& r) { return r.str(); }

json to_json(const Vec& v) { return rats_to_json(v); }

json to_json(const BoxSet& b) {
    json boxes = json::array();
    for (const auto& box : b.boxes()) boxes.push_back(json{{"lo", to_json(box.lo)}, {"hi", to_json(box.hi)}});
    return json{{"dim", b.dim()}, {"boxes", std::move(boxes)}};
}

json to_json(const CFSchedule& s) {
    json levels = json::array();
    for (const auto& lv : s.levels()) {
        json cs = json::array();
        for (const auto& c : lv.c_next) cs.push_back(to_json(c));
        levels.push_back(json{{"h", to_json(lv.h)}, {"C_next", std::move(cs)}});
    }
    return json{{"dim", s.dim()}, {"levels", std::move(levels)}, {"strong", s.strong()}};
}

json to_json(const Cylinder& c) { return json{{"level", c.level}, {"base", to_json(c.base)}}; }

json to_json(const GridMax& g) {
    json table = json::array();
    for (const auto& e : g.table) {
        table.push_back(json{{"a", e.a}, {"b", e.b}, {"t", to_json(g.grid.at(static_cast<std::size_t>(e.t)))},
                             {"N", e.n_fill}});
    }
    return json{{"n", g.n_step}, {"p", g.p}, {"grid", rats_to_json(g.grid)}, {"table", std::move(table)},
                {"D", g.d_max}};
}

json to_json(const Certificate& c) {
    json parts = json::array();
    for (const auto& p : c.parts) parts.push_back(to_json(p));
    return json{{"step", c.step},
                {"p", c.p},
                {"a", c.a},
                {"b", c.b},
                {"base_level", c.base_level},
                {"delta", to_json(c.delta)},
                {"delta_prime", to_json(c.delta_prime)},
                {"t", to_json(c.t)},
                {"N", c.n_fill},
                {"D", c.d_n},
                {"parts", std::move(parts)},
                {"mass_fraction", to_json(c.mass_fraction)},
                {"checks", json{{"mass", c.mass_ok}, {"contained", c.contained_ok}, {"disjoint", c.disjoint_ok}}},
                {"grid", rats_to_json(c.grid)},
                {"scope", "finite time grid on [1/n, n]; D is a grid maximum"}};
}

json to_json(const AuxFlowSpec& a) {
    return json{{"cuts", a.cuts},
                {"gap", rats_to_json(a.gap)},
                {"stair_lin", rats_to_json(a.stair_lin)},
                {"stair_quad", rats_to_json(a.stair_quad)},
                {"slack", rats_to_json(a.slack)},
                {"depth", a.depth}};
}

json to_json(const SweepRow& r) {
    return json{{"target", r.target},         {"samples", r.samples},
                {"hits", r.hits},             {"censored", r.censored},
                {"hit_fraction", to_json(r.hit_fraction)}, {"mean_first_hit", to_json(r.mean_first_hit)}};
}

json to_json(const FillingResult& r, const CFSchedule& s) {
    json parts = json::array();
    json masses = json::array();
    for (const auto& p : r.parts) {
        parts.push_back(to_json(p));
        masses.push_back(to_json(cylinder_measure(s, p)));
    }
    return json{{"q", to_json(r.q)},
                {"A", to_json(r.a)},
                {"B", to_json(r.b)},
                {"N", r.n_fill},
                {"Q", r.q_bound},
                {"work_level", r.work_level},
                {"lemma_level", r.lemma_level},
                {"measure_A", to_json(r.measure_a)},
                {"filled", to_json(r.filled)},
                {"parts", std::move(parts)},
                {"part_masses", std::move(masses)}};
}

json to_json(const BuildReport& r) {
    json markers = json::array();
    for (const auto& m : r.marker_checks) {
        markers.push_back(json{{"level", m.level},
                               {"ratio_jump", to_json(m.ratio_jump)},
                               {"doubled", m.doubled},
                               {"strict_growth", m.strict_growth}});
    }
    json failures = json::array();
    for (const auto& f : r.verdict.failures) failures.push_back(json{{"index", f.index}, {"reason", f.reason}});
    return json{{"markers", r.markers},
                {"D", r.d_values},
                {"ratios", rats_to_json(r.ratios)},
                {"marker_checks", std::move(markers)},
                {"strong_valid", r.strong_valid},
                {"certificates_checked", r.verdict.checked},
                {"failures", std::move(failures)}};
}

Rat rat_from(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
    if (!j.is_string()) throw JsonError(path, "expected a rational string \"p/q\"");
    try {
        return Rat::parse(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw JsonError(path, e.what());
    }
}

Vec vec_from(const json& j, const std::string& path) { return rats_from(j, path); }

BoxSet boxset_from(const json& j, const std::string& path) {
    const int dim = int_from(field(j, "dim", path), path + ".dim");
    if (dim < 1) throw JsonError(path + ".dim", "must be positive");
    const std::string bp = path + ".boxes";
    const json& arr = array_at(field(j, "boxes", path), bp);
    std::vector<Box> boxes;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = idx(bp, i);
        Vec lo = vec_from(field(arr[i], "lo", p), p + ".lo");
        Vec hi = vec_from(field(arr[i], "hi", p), p + ".hi");
        if (static_cast<int>(lo.size()) != dim || static_cast<int>(hi.size()) != dim) {
            throw JsonError(p, "box dimension differs from dim");
        }
        try {
            boxes.emplace_back(std::move(lo), std::move(hi));
        } catch (const std::invalid_argument& e) {
            throw JsonError(p, e.what());
        }
    }
    return BoxSet::canonicalize(boxes, dim);
}

CFSchedule schedule_from(const json& j, const std::string& path) {
    const int dim = int_from(field(j, "dim", path), path + ".dim");
    const std::string lp = path + ".levels";
    const json& arr = array_at(field(j, "levels", path), lp);
    std::vector<CFLevel> levels;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = idx(lp, i);
        CFLevel lv;
        lv.h = rat_from(field(arr[i], "h", p), p + ".h");
        const std::string cp = p + ".C_next";
        const json& cs = arr[i].contains("C_next") ? array_at(arr[i]["C_next"], cp) : json::array();
        for (std::size_t k = 0; k < cs.size(); ++k) lv.c_next.push_back(vec_from(cs[k], idx(cp, k)));
        levels.push_back(std::move(lv));
    }
    bool strong = j.contains("strong") ? bool_from(j["strong"], path + ".strong") : false;
    return CFSchedule::validate(dim, std::move(levels), strong);
}

Cylinder cylinder_from(const json& j, const std::string& path) {
    int level = int_from(field(j, "level", path), path + ".level");
    if (level < 0) throw JsonError(path + ".level", "must be non-negative");
    return Cylinder{level, boxset_from(field(j, "base", path), path + ".base")};
}

GridMax gridmax_from(const json& j, const std::string& path) {
    GridMax g;
    g.n_step = int_from(field(j, "n", path), path + ".n");
    g.p = int_from(field(j, "p", path), path + ".p");
    g.grid = rats_from(field(j, "grid", path), path + ".grid");
    g.d_max = int_from(field(j, "D", path), path + ".D");
    const std::string tp = path + ".table";
    const json& arr = array_at(field(j, "table", path), tp);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = idx(tp, i);
        GridEntry e;
        e.a = int_from(field(arr[i], "a", p), p + ".a");
        e.b = int_from(field(arr[i], "b", p), p + ".b");
        e.n_fill = int_from(field(arr[i], "N", p), p + ".N");
        Rat t = rat_from(field(arr[i], "t", p), p + ".t");
        auto it = std::find(g.grid.begin(), g.grid.end(), t);
        if (it == g.grid.end()) throw JsonError(p + ".t", "time not on the grid");
        e.t = static_cast<int>(it - g.grid.begin());
        g.table.push_back(e);
    }
    return g;
}

Certificate certificate_from(const json& j, const std::string& path) {
    Certificate c;
    c.step = int_from(field(j, "step", path), path + ".step");
    c.p = int_from(field(j, "p", path), path + ".p");
    c.a = int_from(field(j, "a", path), path + ".a");
    c.b = int_from(field(j, "b", path), path + ".b");
    c.base_level = int_from(field(j, "base_level", path), path + ".base_level");
    c.delta = boxset_from(field(j, "delta", path), path + ".delta");
    c.delta_prime = boxset_from(field(j, "delta_prime", path), path + ".delta_prime");
    c.t = rat_from(field(j, "t", path), path + ".t");
    c.n_fill = int_from(field(j, "N", path), path + ".N");
    c.d_n = int_from(field(j, "D", path), path + ".D");
    const std::string pp = path + ".parts";
    const json& parts = array_at(field(j, "parts", path), pp);
    for (std::size_t i = 0; i < parts.size(); ++i) c.parts.push_back(cylinder_from(parts[i], idx(pp, i)));
    c.mass_fraction = rat_from(field(j, "mass_fraction", path), path + ".mass_fraction");
    const std::string kp = path + ".checks";
    const json& checks = field(j, "checks", path);
    c.mass_ok = bool_from(field(checks, "mass", kp), kp + ".mass");
    c.contained_ok = bool_from(field(checks, "contained", kp), kp + ".contained");
    c.disjoint_ok = bool_from(field(checks, "disjoint", kp), kp + ".disjoint");
    c.grid = rats_from(field(j, "grid", path), path + ".grid");
    return c;
}

AuxFlowSpec aux_from(const json& j, const std::string& path) {
    if (!j.is_object()) throw JsonError(path, "expected an object");
    AuxFlowSpec a;
    if (j.contains("cuts")) a.cuts = ints_from(j["cuts"], path + ".cuts");
    if (j.contains("gap")) a.gap = rats_from(j["gap"], path + ".gap");
    if (j.contains("stair_lin")) a.stair_lin = rats_from(j["stair_lin"], path + ".stair_lin");
    if (j.contains("stair_quad")) a.stair_quad = rats_from(j["stair_quad"], path + ".stair_quad");
    if (j.contains("slack")) a.slack = rats_from(j["slack"], path + ".slack");
    if (j.contains("depth")) a.depth = int_from(j["depth"], path + ".depth");
    for (const auto& [name, list] : {std::pair<const char*, std::size_t>{"cuts", a.cuts.size()},
                                     {"gap", a.gap.size()},
                                     {"stair_lin", a.stair_lin.size()},
                                     {"stair_quad", a.stair_quad.size()},
                                     {"slack", a.slack.size()}}) {
        if (list == 0) throw JsonError(path + "." + name, "must not be empty");
    }
    for (std::size_t i = 0; i < a.cuts.size(); ++i) {
        if (a.cuts[i] < 2) throw JsonError(idx(path + ".cuts", i), "cut numbers must be at least 2");
    }
    if (a.depth < 1) throw JsonError(path + ".depth", "must be positive");
    return a;
}

std::vector<AuxFlowSpec> aux_list_from(const json& j, const std::string& path) {
    if (j.is_object()) return {aux_from(j, path)};
    const json& arr = array_at(j, path);
    if (arr.empty()) throw JsonError(path, "needs at least one aux spec");
    std::vector<AuxFlowSpec> out;
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(aux_from(arr[i], idx(path, i)));
    return out;
}

json flow_to_json(const ForcingState& st) {
    json j = to_json(st.schedule);
    j["markers"] = st.markers;
    j["p_seq"] = st.p_seq;
    std::vector<int> d;
    for (const auto& lg : st.log) d.push_back(lg.d_n);
    j["D"] = d;
    return j;
}

FlowFile flow_from(const json& j, const std::string& path) {
    FlowFile f;
    f.schedule = schedule_from(j, path);
    if (j.contains("markers")) f.markers = ints_from(j["markers"], path + ".markers");
    if (j.contains("p_seq")) f.p_seq = ints_from(j["p_seq"], path + ".p_seq");
    if (j.contains("D")) f.d_values = ints_from(j["D"], path + ".D");
    for (std::size_t i = 0; i < f.markers.size(); ++i) {
        if (f.markers[i] < 0 || f.markers[i] > f.schedule.top() || (i > 0 && f.markers[i] <= f.markers[i - 1])) {
            throw JsonError(idx(path + ".markers", i), "markers must increase within the schedule");
        }
    }
    return f;
}

json certificates_to_json(const std::vector<Certificate>& certs) {
    json arr = json::array();
    for (const auto& c : certs) arr.push_back(to_json(c));
    return json{{"certificates", std::move(arr)}};
}

std::vector<Certificate> certificates_from(const json& j, const std::string& path) {
    const std::string cp = path + ".certificates";
    const json& arr = array_at(field(j, "certificates", path), cp);
    std::vector<Certificate> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(certificate_from(arr[i], idx(cp, i)));
    return out;
}

json read_file(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw JsonError(file, "cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw JsonError(file, e.what());
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& file, const json& j) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw JsonError(file, "cannot open file for writing");
    out << dump(j);
    if (!out) throw JsonError(file, "write failed");
}

}  // namespace cfforge::io
