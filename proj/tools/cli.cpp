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

#include "cli.hpp"

#include <CLI11.hpp>
#include <ostream>

#include "cfforge/json_io.hpp"
#include "cfforge/parallel.hpp"

namespace cfforge::cli {
namespace {

using io::json;

struct Common {
    std::string flow;
    int power = 1;
    int threads = 0;
    bool as_json = false;
};

int threads_of(const Common& c) { return c.threads > 0 ? c.threads : default_threads(); }

CFSchedule load_schedule(const Common& c) {
    CFSchedule s = io::flow_from(io::read_file(c.flow), c.flow).schedule;
    return c.power == 1 ? s : power_schedule(s, c.power);
}

Cylinder load_cylinder(const CFSchedule& s, const std::string& file) {
    Cylinder c = io::cylinder_from(io::read_file(file), file);
    return make_cylinder(s, c.level, std::move(c.base));
}

void print_json(std::ostream& out, const json& j) { out << io::dump(j); }

// ---- validate ----------------------------------------------------------

struct ValidateArgs {
    std::string file;
    bool strong = false;
};

int cmd_validate(const ValidateArgs& a, std::ostream& out, std::ostream& err) {
    json j = io::read_file(a.file);
    if (a.strong && j.is_object()) j["strong"] = true;
    try {
        CFSchedule s = io::schedule_from(j, a.file);
        InfiniteMeasureReport rep = check_infinite_measure(s, Rat(2));
        out << "valid: dim " << s.dim() << ", levels 0.." << s.top() << ", strong " << (s.strong() ? "yes" : "no")
            << "\n";
        out << "r_" << s.top() << " = " << rep.ratios.back() << " (r_0 = " << rep.ratios.front() << ")\n";
        return kOk;
    } catch (const ValidationError& e) {
        err << e.what() << "\n";
        return kValidation;
    }
}

// ---- build / check -------------------------------------------------------

struct BuildArgs {
    int steps = 1;
    std::string p_seq = "auto";
    int grid_density = 4;
    std::size_t budget = 64;
    std::string d_margin = "1";
    std::string aux;
    std::string out = "flow.json";
    std::string certs = "certs.json";
    std::string report;
    std::uint64_t seed = 0;
    std::size_t max_boxes = 0;
    int threads = 0;
};

std::vector<int> parse_p_seq(const std::string& text, int steps) {
    if (text == "auto") return auto_p_seq(steps);
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        std::string piece = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            std::size_t used = 0;
            int p = std::stoi(piece, &used);
            if (used != piece.size()) throw std::invalid_argument(piece);
            out.push_back(p);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--p-seq", "malformed entry \"" + piece + "\"");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    for (int p : out) {
        if (p < 2) throw CLI::ValidationError("--p-seq", "powers must be at least 2");
    }
    if (static_cast<int>(out.size()) < steps) throw CLI::ValidationError("--p-seq", "fewer entries than --steps");
    return out;
}

int cmd_build(const BuildArgs& a, std::ostream& out, std::ostream& err) {
    if (a.out == a.certs || (!a.report.empty() && (a.report == a.out || a.report == a.certs))) {
        throw CLI::ValidationError("paths", "output paths must be distinct");
    }
    std::vector<int> p_seq = parse_p_seq(a.p_seq, a.steps);
    std::vector<AuxFlowSpec> aux{AuxFlowSpec{}};
    if (!a.aux.empty()) aux = io::aux_list_from(io::read_file(a.aux), a.aux);
    ForcingOptions opts;
    opts.grid_density = a.grid_density;
    opts.fill.budget = a.budget;
    opts.fill.max_boxes = a.max_boxes;
    try {
        opts.d_margin = Rat::parse(a.d_margin);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError("--d-margin", e.what());
    }
    if (opts.d_margin < Rat(1)) throw CLI::ValidationError("--d-margin", "must be at least 1");
    opts.threads = a.threads > 0 ? a.threads : default_threads();

    BuildResult r = build_flow(p_seq, a.steps, aux, opts);
    io::write_file(a.out, io::flow_to_json(r.state));
    io::write_file(a.certs, io::certificates_to_json(r.certificates));
    if (!a.report.empty()) io::write_file(a.report, io::to_json(r.report));

    out << "steps " << a.steps << ", p_seq";
    for (int i = 0; i < a.steps; ++i) out << (i ? "," : " ") << p_seq[static_cast<std::size_t>(i)];
    out << "\n";
    for (const auto& lg : r.state.log) {
        out << "step " << lg.n << ": p " << lg.p << ", grid D " << lg.grid_d << ", D_n " << lg.d_n << ", levels "
            << lg.first_grafted << ".." << lg.marker << ", certificates " << lg.certificates << "\n";
    }
    out << "markers";
    for (int m : r.report.markers) out << " " << m;
    out << "\n";
    for (const auto& mc : r.report.marker_checks) {
        out << "marker " << mc.level << ": r jump " << mc.ratio_jump << ", doubled " << (mc.doubled ? "yes" : "no")
            << ", growth " << (mc.strict_growth ? "yes" : "no") << "\n";
    }
    out << "certificates " << r.report.verdict.checked << ", failures " << r.report.verdict.failures.size() << "\n";
    for (const auto& f : r.report.verdict.failures) err << "certificate " << f.index << ": " << f.reason << "\n";
    return r.report.verdict.ok() && r.report.strong_valid ? kOk : kValidation;
}

struct CheckArgs {
    std::string flow;
    std::string certs;
    int threads = 0;
};

int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
    io::FlowFile f = io::flow_from(io::read_file(a.flow), a.flow);
    std::vector<Certificate> certs = io::certificates_from(io::read_file(a.certs), a.certs);
    Verdict v = check_certificates(f.schedule, f.markers, certs, a.threads > 0 ? a.threads : default_threads());
    out << "checked " << v.checked << ", failures " << v.failures.size() << "\n";
    for (const auto& fl : v.failures) err << "certificate " << fl.index << ": " << fl.reason << "\n";
    return v.ok() ? kOk : kValidation;
}

// ---- fill / gridmax --------------------------------------------------------

struct FillArgs {
    Common c;
    std::string q;
    std::string a;
    std::string b;
    std::size_t budget = 64;
    int max_level = -1;
    bool lemma = false;
    std::size_t max_boxes = 0;
};

int cmd_fill(const FillArgs& a, std::ostream& out) {
    CFSchedule s = load_schedule(a.c);
    Cylinder ca = load_cylinder(s, a.a);
    Cylinder cb = load_cylinder(s, a.b);
    Vec q = parse_vec(a.q);
    if (q.size() == 1 && s.dim() > 1) q = Vec(static_cast<std::size_t>(s.dim()), q[0]);
    FillOptions opts{a.budget, a.max_level, a.lemma, a.max_boxes};
    FillingResult r = fill(s, q, ca, cb, opts);
    image_stack(s, r);
    if (a.c.as_json) {
        print_json(out, io::to_json(r, s));
        return kOk;
    }
    out << "N = " << r.n_fill << "\n";
    out << "Q = " << r.q_bound << "\n";
    out << "work level = " << r.work_level << "\n";
    out << "mu(A) = " << r.measure_a << ", filled = " << r.filled << "\n";
    for (std::size_t i = 0; i < r.parts.size(); ++i) {
        out << "A_" << i << ": mass " << cylinder_measure(s, r.parts[i]) << ", boxes " << r.parts[i].base.box_count()
            << "\n";
    }
    return kOk;
}

struct GridArgs {
    Common c;
    int n = 1;
    int density = 1;
    int cells = 1;
    std::size_t budget = 64;
    std::size_t max_boxes = 0;
};

int cmd_gridmax(const GridArgs& a, std::ostream& out) {
    CFSchedule base = io::flow_from(io::read_file(a.c.flow), a.c.flow).schedule;
    if (base.dim() != 1) throw PreconditionError("gridmax expects a one-dimensional schedule");
    CFSchedule s = power_schedule(base, a.c.power);
    std::vector<BoxSet> atoms = product_atoms(initial_partition(base, a.cells), a.c.power);
    GridOptions g;
    g.density = a.density;
    g.fill = FillOptions{a.budget, -1, true, a.max_boxes};
    g.threads = threads_of(a.c);
    GridMax gm = grid_max(s, atoms, a.n, a.c.power, g);
    if (a.c.as_json) {
        print_json(out, io::to_json(gm));
        return kOk;
    }
    out << "n " << gm.n_step << ", p " << gm.p << ", atoms " << atoms.size() << ", times " << gm.grid.size() << "\n";
    out << "D = " << gm.d_max << "\n";
    return kOk;
}

// ---- power / measure / lift / apply ---------------------------------------

int cmd_power(const Common& c, const std::string& file, std::ostream& out) {
    CFSchedule s = load_schedule(c);
    if (file.empty()) {
        print_json(out, io::to_json(s));
    } else {
        io::write_file(file, io::to_json(s));
        out << "wrote " << file << " (dim " << s.dim() << ")\n";
    }
    return kOk;
}

int cmd_measure(const Common& c, const std::string& cyl, std::ostream& out) {
    CFSchedule s = load_schedule(c);
    Cylinder cy = load_cylinder(s, cyl);
    if (cy.level > s.top()) throw LevelOutOfRange(cy.level, s.top());
    Rat mu = cylinder_measure(s, cy);
    if (c.as_json) {
        print_json(out, json{{"level", cy.level}, {"measure", io::to_json(mu)}});
    } else {
        out << mu << "\n";
    }
    return kOk;
}

int cmd_lift(const Common& c, const std::string& cyl, int to, const std::string& file, std::ostream& out) {
    CFSchedule s = load_schedule(c);
    Cylinder lifted = lift(s, load_cylinder(s, cyl), to);
    if (file.empty()) {
        print_json(out, io::to_json(lifted));
    } else {
        io::write_file(file, io::to_json(lifted));
        out << "wrote " << file << " (level " << lifted.level << ", " << lifted.base.box_count() << " boxes)\n";
    }
    return kOk;
}

int cmd_apply(const Common& c, const std::string& cyl, const std::string& g, const std::string& eps,
              std::ostream& out) {
    CFSchedule s = load_schedule(c);
    Cylinder cy = load_cylinder(s, cyl);
    ActionResult r = apply_tg(s, cy, parse_vec(g), Rat::parse(eps));
    print_json(out, json{{"image", io::to_json(r.image)},
                         {"remainder", io::to_json(r.remainder)},
                         {"measure_image", io::to_json(cylinder_measure(s, r.image))},
                         {"measure_remainder", io::to_json(cylinder_measure(s, r.remainder))}});
    return kOk;
}

// ---- sweep ------------------------------------------------------------------

struct SweepArgs {
    Common c;
    std::string t;
    int samples = 1000;
    int horizon = 64;
    std::uint64_t seed = 0;
    int level = 0;
    int cells = 2;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
    CFSchedule s = io::flow_from(io::read_file(a.c.flow), a.c.flow).schedule;
    if (s.dim() != 1) throw PreconditionError("sweep expects a one-dimensional schedule");
    if (a.level < 0 || a.level > s.top()) throw LevelOutOfRange(a.level, s.top());
    const int p = a.c.power;
    std::vector<FiberPoint> pts = random_points(s, static_cast<std::size_t>(a.samples) * static_cast<std::size_t>(p), a.seed);
    std::vector<std::vector<FiberPoint>> sample;
    for (std::size_t i = 0; i + static_cast<std::size_t>(p) <= pts.size(); i += static_cast<std::size_t>(p)) {
        sample.emplace_back(pts.begin() + static_cast<std::ptrdiff_t>(i), pts.begin() + static_cast<std::ptrdiff_t>(i) + p);
    }
    Partition part;
    part.level = a.level;
    Rat step = s.h(a.level) / Rat(a.cells);
    for (int i = 0; i < a.cells; ++i) part.atoms.emplace_back(Vec{step * Rat(i)}, Vec{step * Rat(i + 1)});
    std::vector<Cylinder> targets;
    for (auto& b : product_atoms(part, p)) targets.push_back(Cylinder{a.level, std::move(b)});
    std::vector<SweepRow> rows = sweep_stats(s, Rat::parse(a.t), p, sample, a.horizon, targets, threads_of(a.c));
    if (a.c.as_json) {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(io::to_json(r));
        print_json(out, json{{"t", a.t}, {"p", p}, {"level", a.level}, {"horizon", a.horizon}, {"rows", arr}});
        return kOk;
    }
    out << "target  hits  censored  fraction  mean-first-hit\n";
    for (const auto& r : rows) {
        out << r.target << "  " << r.hits << "/" << r.samples << "  " << r.censored << "  " << r.hit_fraction << "  "
            << r.mean_first_hit << "\n";
    }
    return kOk;
}

void add_common(CLI::App* cmd, Common& c, bool power = true) {
    cmd->add_option("--flow", c.flow, "schedule or flow JSON")->required()->check(CLI::ExistingFile);
    if (power) cmd->add_option("--p,--power", c.power, "Cartesian power")->check(CLI::PositiveNumber);
    cmd->add_option("--threads", c.threads, "worker threads (default FORGE_THREADS or hardware)");
    cmd->add_flag("--json", c.as_json, "machine-readable output");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact (C,F)-action engine", "forge"};
    app.require_subcommand(1);

    ValidateArgs va;
    auto* validate = app.add_subcommand("validate", "validate a schedule file");
    validate->add_option("file", va.file, "schedule JSON")->required()->check(CLI::ExistingFile);
    validate->add_flag("--strong", va.strong, "also check strong containment");

    BuildArgs ba;
    auto* build = app.add_subcommand("build", "run the forcing construction");
    build->add_option("--steps", ba.steps)->check(CLI::PositiveNumber);
    build->add_option("--p-seq", ba.p_seq, "auto or a comma list such as 2,3");
    build->add_option("--grid-density", ba.grid_density)->check(CLI::PositiveNumber);
    build->add_option("--budget", ba.budget, "filling sets per fill");
    build->add_option("--d-margin", ba.d_margin, "multiplier on the grid maximum, >= 1");
    build->add_option("--aux", ba.aux, "aux spec JSON")->check(CLI::ExistingFile);
    build->add_option("--out", ba.out);
    build->add_option("--certs", ba.certs);
    build->add_option("--report", ba.report);
    build->add_option("--seed", ba.seed);
    build->add_option("--max-boxes", ba.max_boxes, "abort a fill whose sets exceed this many boxes (0 = off)");
    build->add_option("--threads", ba.threads);

    CheckArgs ca;
    auto* check = app.add_subcommand("check", "re-verify certificates on a flow");
    check->add_option("--flow", ca.flow)->required()->check(CLI::ExistingFile);
    check->add_option("--certs", ca.certs)->required()->check(CLI::ExistingFile);
    check->add_option("--threads", ca.threads);

    FillArgs fa;
    auto* fillc = app.add_subcommand("fill", "filling recursion for two cylinders");
    add_common(fillc, fa.c);
    fillc->add_option("--q", fa.q, "translation, e.g. 1/2 or 1/2,1/2")->required();
    fillc->add_option("--a", fa.a, "cylinder JSON")->required()->check(CLI::ExistingFile);
    fillc->add_option("--b", fa.b, "cylinder JSON")->required()->check(CLI::ExistingFile);
    fillc->add_option("--budget", fa.budget);
    fillc->add_option("--max-level", fa.max_level);
    fillc->add_option("--max-boxes", fa.max_boxes);
    fillc->add_flag("--lemma", fa.lemma, "enforce the structure-lemma hypotheses");

    GridArgs ga;
    auto* gridc = app.add_subcommand("gridmax", "grid maximum of filling numbers over atom pairs");
    add_common(gridc, ga.c);
    gridc->add_option("--n", ga.n, "step index; times run over [1/n, n]")->check(CLI::PositiveNumber);
    gridc->add_option("--density", ga.density)->check(CLI::PositiveNumber);
    gridc->add_option("--cells", ga.cells, "atoms per axis of F_0")->check(CLI::PositiveNumber);
    gridc->add_option("--budget", ga.budget);
    gridc->add_option("--max-boxes", ga.max_boxes);

    Common pc;
    std::string power_out;
    auto* powerc = app.add_subcommand("power", "Cartesian power of a schedule");
    add_common(powerc, pc);
    powerc->add_option("--out", power_out);

    SweepArgs sa;
    auto* sweepc = app.add_subcommand("sweep", "Monte Carlo first-hit table for V_t");
    add_common(sweepc, sa.c);
    sweepc->add_option("--t", sa.t)->required();
    sweepc->add_option("--samples", sa.samples)->check(CLI::PositiveNumber);
    sweepc->add_option("--horizon", sa.horizon)->check(CLI::PositiveNumber);
    sweepc->add_option("--seed", sa.seed);
    sweepc->add_option("--level", sa.level, "level of the target cells");
    sweepc->add_option("--cells", sa.cells, "target cells per axis")->check(CLI::PositiveNumber);

    Common mc;
    std::string measure_cyl;
    auto* measurec = app.add_subcommand("measure", "measure of a cylinder");
    add_common(measurec, mc);
    measurec->add_option("--cyl", measure_cyl)->required()->check(CLI::ExistingFile);

    Common lc;
    std::string lift_cyl;
    std::string lift_out;
    int lift_to = 0;
    auto* liftc = app.add_subcommand("lift", "lift a cylinder to a higher level");
    add_common(liftc, lc);
    liftc->add_option("--cyl", lift_cyl)->required()->check(CLI::ExistingFile);
    liftc->add_option("--to", lift_to)->required();
    liftc->add_option("--out", lift_out);

    Common ac;
    std::string apply_cyl;
    std::string apply_g;
    std::string apply_eps = "1/1000000";
    auto* applyc = app.add_subcommand("apply", "apply T_g to a cylinder");
    add_common(applyc, ac);
    applyc->add_option("--cyl", apply_cyl)->required()->check(CLI::ExistingFile);
    applyc->add_option("--g", apply_g, "translation vector, e.g. 1/2,0")->required();
    applyc->add_option("--eps", apply_eps);

    std::vector<const char*> argv{"forge"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    try {
        if (*validate) return cmd_validate(va, out, err);
        if (*build) return cmd_build(ba, out, err);
        if (*check) return cmd_check(ca, out, err);
        if (*fillc) return cmd_fill(fa, out);
        if (*gridc) return cmd_gridmax(ga, out);
        if (*powerc) return cmd_power(pc, power_out, out);
        if (*sweepc) return cmd_sweep(sa, out);
        if (*measurec) return cmd_measure(mc, measure_cyl, out);
        if (*liftc) return cmd_lift(lc, lift_cyl, lift_to, lift_out, out);
        if (*applyc) return cmd_apply(ac, apply_cyl, apply_g, apply_eps, out);
    } catch (const CLI::ValidationError& e) {
        err << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const GridBudgetExhausted& e) {
        err << "budget exhausted at step " << e.step << ", atoms (" << e.a << ", " << e.b << "), t = " << e.t << ": "
            << e.what() << "\n";
        return kBudget;
    } catch (const BudgetExhausted& e) {
        err << "budget exhausted: " << e.what() << "\n";
        return kBudget;
    } catch (const ScheduleTooShort& e) {
        err << "schedule too short: " << e.what() << "\n";
        return kBudget;
    } catch (const ValidationError& e) {
        err << e.what() << "\n";
        return kValidation;
    } catch (const io::JsonError& e) {
        err << "parse error: " << e.what() << "\n";
        return kValidation;
    } catch (const CertificateViolation& e) {
        err << "certificate violation: " << e.what() << "\n";
        return kValidation;
    } catch (const PreconditionError& e) {
        err << "precondition: " << e.what() << "\n";
        return kPrecondition;
    } catch (const std::invalid_argument& e) {
        err << "precondition: " << e.what() << "\n";
        return kPrecondition;
    } catch (const std::out_of_range& e) {
        err << "precondition: " << e.what() << "\n";
        return kPrecondition;
    } catch (const PowerOverflow& e) {
        err << "precondition: " << e.what() << "\n";
        return kPrecondition;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    }
    return kUsage;
}

}  // namespace cfforge::cli
