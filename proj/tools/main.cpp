// re100 — batch analysis of 100%-renewable system sizing and cost.
//
// Exit codes: 0 success, 1 validation/ingest error, 2 infeasible system,
// 3 resource/solver limit.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "re100/econ.hpp"
#include "re100/envelope.hpp"
#include "re100/errors.hpp"
#include "re100/lossy.hpp"
#include "re100/lp.hpp"
#include "re100/oracle.hpp"
#include "re100/profile_io.hpp"
#include "re100/serialize.hpp"
#include "svg_plot.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using namespace re100;

std::string g_command_line;

std::string file_header() {
    return "re100 " + std::string(kVersion) + "\ncmd: " + g_command_line;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

// "lo:hi:n"
struct Sweep {
    double lo = 1.0, hi = 3.0;
    int n = 21;
};

Sweep parse_sweep(const std::string& spec) {
    Sweep sweep;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &sweep.lo, &sweep.hi, &sweep.n) != 3 ||
        sweep.n < 2 || !(sweep.hi > sweep.lo))
        throw ValidationError("bad sweep spec '" + spec + "' (want lo:hi:n)");
    return sweep;
}

// "pattern:key=value,key=value"
Profile parse_synth(const std::string& spec, int steps, std::uint64_t seed,
                    ProfileKind kind, const std::string& label) {
    std::string pattern = spec;
    SynthParams params;
    auto colon = spec.find(':');
    if (colon != std::string::npos) {
        pattern = spec.substr(0, colon);
        std::istringstream rest(spec.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw ValidationError("bad synth parameter '" + item + "'");
            std::string key = item.substr(0, eq);
            double value = std::stod(item.substr(eq + 1));
            if (key == "amplitude") params.amplitude = value;
            else if (key == "phase") params.phase = value;
            else if (key == "on_start") params.on_start = static_cast<int>(value);
            else if (key == "on_end") params.on_end = static_cast<int>(value);
            else if (key == "noise") params.noise = value;
            else throw ValidationError("unknown synth parameter '" + key + "'");
        }
    }
    return synth(pattern, steps, params, seed, kind, label);
}

struct InputOptions {
    std::string data_path;
    std::string region, year;
    std::vector<std::string> sources;
    double pv_ratio = -1.0;
    std::string synth_demand;
    std::vector<std::string> synth_gen;
    int steps = 96;
    std::uint64_t seed = 1;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("--data", in.data_path,
                    "input table: header 'timestamp,demand,<source>...', one row per hour");
    cmd->add_option("--region", in.region, "region tag for ingested data");
    cmd->add_option("--year", in.year, "year tag for ingested data");
    cmd->add_option("--source", in.sources, "generation column(s) to use (default: all)");
    cmd->add_option("--pv-ratio", in.pv_ratio,
                    "generation share of the first source; the rest comes from the second");
    cmd->add_option("--synth-demand", in.synth_demand,
                    "synthetic demand 'pattern[:k=v,...]' (patterns: uniform, diurnal-sine, "
                    "seasonal-sine, block, seeded-noise-mix)");
    cmd->add_option("--synth-gen", in.synth_gen, "synthetic generation spec (repeat for two)");
    cmd->add_option("--steps", in.steps, "synthetic series length")->check(CLI::Range(2, 1000000));
    cmd->add_option("--seed", in.seed, "synthetic series seed");
}

struct ResolvedInput {
    Profile demand;
    std::vector<std::pair<std::string, Profile>> generations;  // selected sources
    Profile generation;                                        // mixed per --pv-ratio
};

ResolvedInput resolve_input(const InputOptions& in) {
    std::optional<Profile> demand;
    std::vector<std::pair<std::string, Profile>> gens;

    if (!in.data_path.empty()) {
        IngestReport report;
        auto set = ingest_occto(in.data_path, in.region, in.year, &report);
        for (const auto& note : report.notes) std::cerr << "note: " << note << "\n";
        demand = set.demand;
        if (in.sources.empty()) {
            gens = set.generations;
        } else {
            for (const auto& name : in.sources) gens.emplace_back(name, set.generation(name));
        }
    } else if (!in.synth_demand.empty() || !in.synth_gen.empty()) {
        if (in.synth_demand.empty() || in.synth_gen.empty())
            throw ValidationError("synthetic input needs both --synth-demand and --synth-gen");
        demand = parse_synth(in.synth_demand, in.steps, in.seed, ProfileKind::demand, "demand");
        for (std::size_t k = 0; k < in.synth_gen.size(); ++k)
            gens.emplace_back("gen" + std::to_string(k + 1),
                              parse_synth(in.synth_gen[k], in.steps, in.seed + 101 * (k + 1),
                                          ProfileKind::generation,
                                          "gen" + std::to_string(k + 1)));
    } else {
        throw ValidationError("no input: give --data or --synth-demand/--synth-gen");
    }

    if (gens.empty()) throw ValidationError("no generation source selected");

    Profile mixed = gens.front().second;
    if (in.pv_ratio >= 0.0) {
        if (gens.size() != 2)
            throw ValidationError("--pv-ratio needs exactly two generation sources, got " +
                                  std::to_string(gens.size()));
        mixed = mix({gens[0].second, gens[1].second}, {in.pv_ratio, 1.0 - in.pv_ratio});
    } else if (gens.size() > 1) {
        throw ValidationError("several generation sources selected; give --pv-ratio or a "
                              "single --source");
    }
    return ResolvedInput{std::move(*demand), std::move(gens), std::move(mixed)};
}

struct EffOptions {
    double cycle = 1.0;
    double charge = -1.0;
    double discharge = -1.0;

    // Symmetric split e_c = sqrt(e), e_d = 1/sqrt(e) unless set explicitly.
    std::pair<double, double> resolve() const {
        double e_c = charge > 0.0 ? charge : std::sqrt(cycle);
        double e_d = discharge > 0.0 ? discharge : 1.0 / std::sqrt(cycle);
        return {e_c, e_d};
    }
    bool lossless() const {
        auto [e_c, e_d] = resolve();
        return e_c == 1.0 && e_d == 1.0;
    }
};

void add_eff_options(CLI::App* cmd, EffOptions& eff) {
    cmd->add_option("--eff", eff.cycle, "storage cycle efficiency (split symmetrically)")
        ->check(CLI::Range(1e-6, 1.0));
    cmd->add_option("--eff-charge", eff.charge, "charge efficiency (<= 1)");
    cmd->add_option("--eff-discharge", eff.discharge, "discharge factor (>= 1)");
}

void write_table(const std::string& path, const std::string& header_row,
                 const std::vector<std::string>& rows) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << "# re100 " << kVersion << "\n# cmd: " << g_command_line << "\n";
    out << header_row << "\n";
    for (const auto& row : rows) out << row << "\n";
}

// ---------------------------------------------------------------------------

struct ProdfnArgs {
    InputOptions in;
    EffOptions eff;
    std::string out, table, plot;
    std::string sweep_spec = "1:4:61";
};

void run_prodfn(const ProdfnArgs& args) {
    auto input = resolve_input(args.in);

    if (args.eff.lossless()) {
        auto pf = partial_sum_hull(input.demand, input.generation);
        if (!args.out.empty()) write_file(args.out, to_text(pf), file_header());
        if (!args.table.empty()) {
            std::vector<std::string> rows;
            for (const auto& v : pf.vertices())
                rows.push_back("vertex\t" + fmt(v.x_g) + "\t" + fmt(v.x_s) + "\t\t");
            for (const auto& s : pf.segments())
                rows.push_back("segment\t" + fmt(s.slope) + "\t" + fmt(s.intercept) + "\t" +
                               std::to_string(s.interval.start) + "\t" +
                               std::to_string(s.interval.end));
            write_table(args.table, "kind\ta\tb\tinterval_start\tinterval_end", rows);
        }
        if (!args.plot.empty()) {
            plot::SvgPlot figure("generation vs storage capacity", "x_g", "x_s");
            std::vector<plot::Point> curve;
            double x_max = pf.vertices().back().x_g + 0.5;
            if (pf.vertices().size() == 1) x_max = 3.0;
            for (int k = 0; k <= 200; ++k) {
                double x = 1.0 + (x_max - 1.0) * k / 200.0;
                curve.emplace_back(x, pf.eval(x));
            }
            figure.add_line(std::move(curve), "#1f6fb4", "x_s(x_g)");
            std::vector<plot::Point> markers;
            for (const auto& v : pf.vertices()) markers.emplace_back(v.x_g, v.x_s);
            figure.add_markers(std::move(markers), "#d62728");
            figure.write(args.plot);
        }
        std::cout << "production function: " << pf.segments().size() << " segments, x_s(1) = "
                  << fmt(pf.eval(1.0)) << "\n";
        return;
    }

    auto [e_c, e_d] = args.eff.resolve();
    auto sweep = parse_sweep(args.sweep_spec);
    auto points = lossy_sweep(input.demand, input.generation, e_c, e_d, sweep.lo, sweep.hi,
                              sweep.n);
    std::vector<std::string> rows;
    for (const auto& p : points) rows.push_back(fmt(p.x_g) + "\t" + fmt(p.x_s));
    std::string table_path = !args.table.empty() ? args.table : args.out;
    if (!table_path.empty()) write_table(table_path, "x_g\tx_s", rows);
    if (!args.plot.empty()) {
        plot::SvgPlot figure("generation vs storage capacity (lossy)", "x_g", "x_s");
        std::vector<plot::Point> curve;
        for (const auto& p : points) curve.emplace_back(p.x_g, p.x_s);
        figure.add_line(std::move(curve), "#1f6fb4",
                        "e_c=" + fmt(e_c).substr(0, 6) + " e_d=" + fmt(e_d).substr(0, 6));
        figure.write(args.plot);
    }
    std::cout << "lossy sweep: " << points.size() << " points, x_s(" << fmt(points.front().x_g)
              << ") = " << fmt(points.front().x_s) << "\n";
}

// ---------------------------------------------------------------------------

struct CostfnArgs {
    InputOptions in;
    std::vector<std::string> pf_files;
    std::vector<double> contours;
    double c_g = -1.0, c_s = -1.0;
    std::string out, table, plot;
    std::string currency = "JPY/kWh";
};

void run_costfn(const CostfnArgs& args) {
    std::vector<std::pair<std::string, ProductionFunction>> sources;
    for (const auto& path : args.pf_files)
        sources.emplace_back(path, production_function_from_text(read_file(path)));
    if (sources.empty()) {
        auto input = resolve_input(args.in);
        sources.emplace_back("input", partial_sum_hull(input.demand, input.generation));
    }

    std::vector<double> targets = args.contours;
    if (targets.empty()) targets.push_back(10.0);  // economic-feasibility criterion

    TechCosts costs;
    costs.currency = args.currency;
    if (args.c_g > 0) costs.c_g = args.c_g;
    if (args.c_s > 0) costs.c_s = args.c_s;

    plot::SvgPlot figure("cost function: single LCOE combinations", "c_g", "c_s");
    const char* palette[] = {"#1f6fb4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"};
    std::vector<std::string> rows;
    std::string first_doc;
    int color = 0;
    for (const auto& [name, pf] : sources) {
        auto cf = legendre(pf);
        if (first_doc.empty()) first_doc = to_text(cf, costs);
        for (double target : targets) {
            auto line = contour(cf, target);
            std::vector<plot::Point> pts(line.points.begin(), line.points.end());
            double y_cap = 0.0;
            for (const auto& [cg, cs] : line.points) y_cap = std::max(y_cap, cs);
            if (line.vertical_ray && !pts.empty())
                pts.emplace_back(pts.back().first, std::max(2.0 * y_cap, 4.0 * target));
            std::string label = name + " L=" + fmt(target).substr(0, 6);
            figure.add_line(pts, palette[color % 6], label);
            ++color;
            for (std::size_t i = 0; i < line.points.size(); ++i)
                rows.push_back(name + "\t" + fmt(target) + "\t" + fmt(line.points[i].first) +
                               "\t" + fmt(line.points[i].second) + "\t" +
                               ((i + 1 == line.points.size() && line.vertical_ray) ? "ray-up"
                                                                                   : ""));
        }
        if (args.c_g > 0 && args.c_s > 0) {
            auto opt = optimal_capacity(cf, args.c_g, args.c_s);
            std::cout << name << ": optimal (x_g, x_s) = (" << fmt(opt.vertex.x_g) << ", "
                      << fmt(opt.vertex.x_s) << "), total LCOE = " << fmt(opt.lcoe) << " "
                      << costs.currency << "\n";
        }
    }
    if (!args.out.empty()) write_file(args.out, first_doc, file_header());
    if (!args.table.empty())
        write_table(args.table, "source\tL\tc_g\tc_s\tnote", rows);
    if (!args.plot.empty()) figure.write(args.plot);
    std::cout << "cost function: " << sources.size() << " source(s), " << targets.size()
              << " contour level(s)\n";
}

// ---------------------------------------------------------------------------

struct GdCurveArgs {
    InputOptions in;
    std::string table, points_path, plot;
    int point_stride = 0;  // 0 = auto
};

void run_gd_curve(const GdCurveArgs& args) {
    auto input = resolve_input(args.in);
    auto pf = partial_sum_hull(input.demand, input.generation);

    if (!args.table.empty()) {
        std::vector<std::string> rows;
        for (const auto& p : pf.hull_boundary())
            rows.push_back(fmt(p.gen_sum) + "\t" + fmt(p.dem_sum) + "\t" +
                           std::to_string(p.interval.start) + "\t" +
                           std::to_string(p.interval.end));
        write_table(args.table, "G\tD\tinterval_start\tinterval_end", rows);
    }

    // Decimated interval cloud straight from prefix sums.
    const auto& d = input.demand.values();
    const auto& g = input.generation.values();
    const int steps = input.demand.steps();
    long total_points = static_cast<long>(steps) * steps;
    int stride = args.point_stride > 0
                     ? args.point_stride
                     : std::max(1, static_cast<int>(total_points / 20000));
    std::vector<plot::Point> cloud;
    std::vector<std::string> cloud_rows;
    long index = 0;
    for (int start = 0; start < steps; ++start) {
        double gen_sum = 0.0, dem_sum = 0.0;
        for (int len = 1; len <= steps; ++len) {
            int t = (start + len - 1) % steps;
            gen_sum += g[static_cast<std::size_t>(t)];
            dem_sum += d[static_cast<std::size_t>(t)];
            if (index++ % stride == 0) {
                cloud.emplace_back(gen_sum, dem_sum);
                if (!args.points_path.empty())
                    cloud_rows.push_back(fmt(gen_sum) + "\t" + fmt(dem_sum));
            }
        }
    }
    if (!args.points_path.empty()) write_table(args.points_path, "G\tD", cloud_rows);

    if (!args.plot.empty()) {
        plot::SvgPlot figure("partial sums of unit generation and demand", "G", "D");
        figure.add_points(std::move(cloud), "#bbbbbb", "intervals");
        figure.add_line({{0.0, 0.0}, {1.0, 1.0}}, "#333333", "D = G");
        std::vector<plot::Point> boundary;
        for (const auto& p : pf.hull_boundary()) boundary.emplace_back(p.gen_sum, p.dem_sum);
        figure.add_line(std::move(boundary), "#d62728", "hull boundary");
        figure.write(args.plot);
    }
    std::cout << "gd-curve: " << pf.hull_boundary().size() << " boundary points, stride "
              << stride << "\n";
}

// ---------------------------------------------------------------------------

struct LpArgs {
    InputOptions in;
    std::string variant = "compare";
    TechCosts costs;
    double e1c = std::pow(0.8, 0.5), e1d = std::pow(0.8, -0.5);
    double e2c = 0.8, e2d = 2.0;
    double fix_xg = -1.0, fix_xp = -1.0;
    std::string out;
    bool want_diagnostics = false;
};

void run_lp(const LpArgs& args) {
    auto input = resolve_input(args.in);
    StorageTech st1{args.e1c, args.e1d, args.costs.c_1e, args.costs.c_1p, args.costs.c_1p};
    StorageTech st2{args.e2c, args.e2d, args.costs.c_2e, args.costs.c_2p_in,
                    args.costs.c_2p_out};

    auto solve_variant = [&](const std::string& name) -> std::pair<LpModel, LpSolution> {
        LpModel model;
        if (name == "simplest" || name == "lossy" || name == "power_capped") {
            std::vector<StorageTech> sts = {name == "simplest" ? StorageTech{} : st1};
            model = build(lp_variant_from_string(name), input.demand, input.generation,
                          args.costs, sts);
        } else if (name == "two_storage" || name == "st1" || name == "st2") {
            model = build(LpVariant::two_storage, input.demand, input.generation, args.costs,
                          {st1, st2});
            if (name == "st1") {
                model.fix_variable("x_2s", 0.0);
                model.fix_variable("x_2p_in", 0.0);
                model.fix_variable("x_2p_out", 0.0);
            } else if (name == "st2") {
                model.fix_variable("x_1s", 0.0);
                model.fix_variable("x_1p", 0.0);
            }
        } else {
            throw ValidationError("unknown LP variant '" + name + "'");
        }
        if (args.fix_xg > 0) model.fix_variable("x_g", args.fix_xg);
        if (args.fix_xp > 0 && model.variant == LpVariant::power_capped)
            model.fix_variable("x_p", args.fix_xp);
        return {std::move(model), solve(model)};
    };

    auto describe = [&](const LpModel& model, const LpSolution& sol) {
        std::ostringstream out;
        if (sol.status != LpSolution::Status::optimal) {
            out << "status "
                << (sol.status == LpSolution::Status::infeasible ? "infeasible" : "unbounded");
            return out.str();
        }
        out << "L = " << fmt(sol.objective) << ", x_g = " << fmt(sol.value(model, "x_g"));
        for (const char* cap : {"x_s", "x_p", "x_1s", "x_1p", "x_2s", "x_2p_in", "x_2p_out"}) {
            try {
                std::string value = fmt(sol.value(model, cap));
                out << ", " << cap << " = " << value;
            } catch (const ValidationError&) {
            }
        }
        return out.str();
    };

    if (args.variant == "compare") {
        auto [m_both, s_both] = solve_variant("two_storage");
        auto [m_st1, s_st1] = solve_variant("st1");
        auto [m_st2, s_st2] = solve_variant("st2");
        std::cout << "two_storage: " << describe(m_both, s_both) << "\n";
        std::cout << "st1 only:    " << describe(m_st1, s_st1) << "\n";
        std::cout << "st2 only:    " << describe(m_st2, s_st2) << "\n";
        if (s_both.status == LpSolution::Status::optimal &&
            s_st1.status == LpSolution::Status::optimal &&
            s_st2.status == LpSolution::Status::optimal) {
            double excess =
                s_both.objective - std::min(s_st1.objective, s_st2.objective);
            if (excess > 1e-9)
                throw SolverError("option dominance violated by " + fmt(excess));
            std::cout << "dominance: L(ST1&ST2) <= min(L(ST1), L(ST2)) holds\n";
        }
        if (!args.out.empty())
            write_file(args.out,
                       to_text(m_both) + to_text(s_both) + to_text(m_st1) + to_text(s_st1) +
                           to_text(m_st2) + to_text(s_st2),
                       file_header());
        if (s_both.status != LpSolution::Status::optimal)
            throw InfeasibleError("two-storage system infeasible");
        return;
    }

    auto [model, solution] = solve_variant(args.variant);
    std::cout << args.variant << ": " << describe(model, solution) << "\n";
    if (!args.out.empty())
        write_file(args.out, to_text(model) + to_text(solution), file_header());
    if (solution.status != LpSolution::Status::optimal)
        throw InfeasibleError("system infeasible at the given capacities");
    if (args.want_diagnostics) {
        auto diag = diagnostics(model, solution);
        std::cout << "bottleneck interval: t = " << diag.interval.start << ".."
                  << diag.interval.end << "\n"
                  << "state of charge at start/end: " << fmt(diag.soc_at_start) << " / "
                  << fmt(diag.soc_at_end) << "\n"
                  << "max unutilized generation inside: " << fmt(diag.unutilized_max) << "\n";
        if (diag.dxs_dxg)
            std::cout << "dx_s/dx_g = " << fmt(*diag.dxs_dxg) << " (binding interval G* = "
                      << fmt(diag.gen_sum_expected) << ", c_g/c_s = " << fmt(diag.cost_ratio)
                      << ")\n";
        if (diag.dxs_dxp) std::cout << "dx_s/dx_p = " << fmt(*diag.dxs_dxp) << "\n";
        if (!diag.conclusive) std::cout << "note: " << diag.note << "\n";
    }
}

// ---------------------------------------------------------------------------

struct BottleneckArgs {
    InputOptions in;
    std::string sweep_spec = "1:3:21";
    std::string table;
};

void run_bottleneck(const BottleneckArgs& args) {
    auto input = resolve_input(args.in);
    auto pf = partial_sum_hull(input.demand, input.generation);
    auto sweep = parse_sweep(args.sweep_spec);
    std::vector<std::string> rows;
    for (int k = 0; k < sweep.n; ++k) {
        double x_g = sweep.lo + (sweep.hi - sweep.lo) * k / (sweep.n - 1);
        if (x_g < pf.xg_min()) continue;
        auto r = pf.bottleneck_at(x_g);
        rows.push_back(fmt(r.x_g) + "\t" + fmt(r.x_s) + "\t" + std::to_string(r.interval.start) +
                       "\t" + std::to_string(r.interval.end) + "\t" + fmt(r.length_hours) +
                       "\t" + fmt(r.dem_sum) + "\t" + fmt(r.gen_sum) + "\t" +
                       (r.degenerate ? "degenerate" : ""));
    }
    if (!args.table.empty())
        write_table(args.table,
                    "x_g\tx_s\tinterval_start\tinterval_end\tlength_hours\tD_star\tG_star\tnote",
                    rows);
    else
        for (const auto& row : rows) std::cout << row << "\n";
}

// ---------------------------------------------------------------------------

struct CalibrateArgs {
    InputOptions in;
    std::string cg_grid = "2:8:7";
    std::string c1e_grid = "100:900:9";
    double target = 10.0;
    std::string table;
};

void run_calibrate(const CalibrateArgs& args) {
    auto input = resolve_input(args.in);
    auto cg_sweep = parse_sweep(args.cg_grid);
    auto c1e_sweep = parse_sweep(args.c1e_grid);

    std::vector<std::string> rows;
    double best_cg = 0.0, best_c1e = 0.0, best_l = 0.0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < cg_sweep.n; ++i) {
        double c_g = cg_sweep.lo + (cg_sweep.hi - cg_sweep.lo) * i / (cg_sweep.n - 1);
        for (int j = 0; j < c1e_sweep.n; ++j) {
            double c_1e = c1e_sweep.lo + (c1e_sweep.hi - c1e_sweep.lo) * j / (c1e_sweep.n - 1);
            TechCosts costs;
            costs.c_g = c_g;
            costs.c_1e = c_1e;
            StorageTech st1 = StorageTech::st1();
            st1.energy_cost = c_1e;
            auto model = build(LpVariant::two_storage, input.demand, input.generation, costs,
                               {st1, StorageTech::st2()});
            auto sol = solve(model);
            if (sol.status != LpSolution::Status::optimal) {
                rows.push_back(fmt(c_g) + "\t" + fmt(c_1e) + "\tinfeasible");
                continue;
            }
            rows.push_back(fmt(c_g) + "\t" + fmt(c_1e) + "\t" + fmt(sol.objective));
            double gap = std::abs(sol.objective - args.target);
            if (gap < best_gap) {
                best_gap = gap;
                best_cg = c_g;
                best_c1e = c_1e;
                best_l = sol.objective;
            }
        }
    }
    if (!args.table.empty()) write_table(args.table, "c_g\tc_1e\tL", rows);
    std::cout << "calibrate: closest to target " << fmt(args.target) << " is (c_g, c_1e) = ("
              << fmt(best_cg) << ", " << fmt(best_c1e) << ") with L = " << fmt(best_l) << "\n";
}

// ---------------------------------------------------------------------------

struct OracleArgs {
    InputOptions in;
    std::string quantity = "interval-max";
    double x_g = 1.0;
    double capacity = 0.0;
    double c_g = 4.7, c_s = 500.0;
    EffOptions eff;
    std::string pf_file;
};

void run_oracle(const OracleArgs& args) {
    oracle::OracleReport report;
    if (args.quantity == "vertex-scan") {
        ProductionFunction pf = [&]() {
            if (!args.pf_file.empty())
                return production_function_from_text(read_file(args.pf_file));
            auto input = resolve_input(args.in);
            return partial_sum_hull(input.demand, input.generation);
        }();
        report = oracle::report_vertex_scan(pf, args.c_g, args.c_s);
    } else {
        auto input = resolve_input(args.in);
        auto [e_c, e_d] = args.eff.resolve();
        if (args.quantity == "interval-max")
            report = oracle::report_enumerate(input.demand, input.generation, args.x_g);
        else if (args.quantity == "greedy-feasible")
            report = oracle::report_greedy(input.demand, input.generation, args.x_g,
                                           args.capacity, e_c, e_d);
        else if (args.quantity == "min-capacity")
            report = oracle::report_min_capacity(input.demand, input.generation, args.x_g, e_c,
                                                 e_d);
        else
            throw ValidationError("unknown oracle quantity '" + args.quantity + "'");
    }
    std::cout << "quantity:    " << report.quantity << "\n"
              << "method:      " << report.method << "\n"
              << "value:       " << fmt(report.value) << "\n"
              << "fingerprint: " << report.fingerprint << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    std::ostringstream cmd;
    for (int i = 0; i < argc; ++i) cmd << (i ? " " : "") << argv[i];
    g_command_line = cmd.str();

    CLI::App app{"re100: generation/storage sizing and cost analysis for fully "
                 "renewable power systems"};
    app.set_version_flag("--version", std::string("re100 ") + kVersion);
    app.set_config("--config", "", "key=value defaults for any option; flags override");
    app.require_subcommand(1);

    ProdfnArgs prodfn_args;
    auto* prodfn_cmd = app.add_subcommand(
        "prodfn", "production function x_s(x_g): exact segments or lossy sweep");
    add_input_options(prodfn_cmd, prodfn_args.in);
    add_eff_options(prodfn_cmd, prodfn_args.eff);
    prodfn_cmd->add_option("--out", prodfn_args.out, "structured production-function file");
    prodfn_cmd->add_option("--table", prodfn_args.table, "delimited data table");
    prodfn_cmd->add_option("--plot", prodfn_args.plot, "SVG plot");
    prodfn_cmd->add_option("--xg-sweep", prodfn_args.sweep_spec, "lossy sweep grid lo:hi:n");

    CostfnArgs costfn_args;
    auto* costfn_cmd = app.add_subcommand(
        "costfn", "Legendre dual: optimal capacities and total-LCOE contours");
    add_input_options(costfn_cmd, costfn_args.in);
    costfn_cmd->add_option("--pf", costfn_args.pf_files,
                           "production-function file(s) instead of raw inputs");
    costfn_cmd->add_option("--contour", costfn_args.contours,
                           "total-LCOE contour level (repeatable; default 10)");
    costfn_cmd->add_option("--c-g", costfn_args.c_g, "generation single LCOE for a lookup");
    costfn_cmd->add_option("--c-s", costfn_args.c_s, "storage annualized cost for a lookup");
    costfn_cmd->add_option("--currency", costfn_args.currency, "currency label");
    costfn_cmd->add_option("--out", costfn_args.out, "structured cost-function file");
    costfn_cmd->add_option("--table", costfn_args.table, "contour endpoint table");
    costfn_cmd->add_option("--plot", costfn_args.plot, "SVG plot");

    GdCurveArgs gd_args;
    auto* gd_cmd = app.add_subcommand(
        "gd-curve", "hull boundary and interval cloud in the (G, D) plane");
    add_input_options(gd_cmd, gd_args.in);
    gd_cmd->add_option("--table", gd_args.table, "boundary table");
    gd_cmd->add_option("--points", gd_args.points_path, "decimated interval-cloud table");
    gd_cmd->add_option("--plot", gd_args.plot, "SVG plot");
    gd_cmd->add_option("--point-stride", gd_args.point_stride,
                       "keep every k-th cloud point (default: auto for <= 20000)");

    LpArgs lp_args;
    auto* lp_cmd = app.add_subcommand("lp", "exact LP solves and bottleneck diagnostics");
    add_input_options(lp_cmd, lp_args.in);
    lp_cmd->add_option("--variant", lp_args.variant,
                       "simplest | lossy | power_capped | two_storage | st1 | st2 | compare");
    lp_cmd->add_option("--c-g", lp_args.costs.c_g, "generation single LCOE");
    lp_cmd->add_option("--c-s", lp_args.costs.c_s, "storage energy cost (single-storage)");
    lp_cmd->add_option("--c-1e", lp_args.costs.c_1e, "ST1 energy capacity cost per year");
    lp_cmd->add_option("--c-1p", lp_args.costs.c_1p, "ST1 power capacity cost per year");
    lp_cmd->add_option("--c-2e", lp_args.costs.c_2e, "ST2 energy capacity cost per year");
    lp_cmd->add_option("--c-2p-in", lp_args.costs.c_2p_in, "ST2 charge power cost per year");
    lp_cmd->add_option("--c-2p-out", lp_args.costs.c_2p_out,
                       "ST2 discharge power cost per year");
    lp_cmd->add_option("--e1c", lp_args.e1c, "ST1 charge efficiency");
    lp_cmd->add_option("--e1d", lp_args.e1d, "ST1 discharge factor");
    lp_cmd->add_option("--e2c", lp_args.e2c, "ST2 charge efficiency");
    lp_cmd->add_option("--e2d", lp_args.e2d, "ST2 discharge factor");
    lp_cmd->add_option("--fix-xg", lp_args.fix_xg, "pin the generation capacity");
    lp_cmd->add_option("--fix-xp", lp_args.fix_xp, "pin the power capacity (power_capped)");
    lp_cmd->add_option("--out", lp_args.out, "model + solution file");
    lp_cmd->add_flag("--diagnostics", lp_args.want_diagnostics, "print bottleneck diagnostics");

    BottleneckArgs bn_args;
    auto* bn_cmd = app.add_subcommand("bottleneck", "bottleneck reports over an x_g sweep");
    add_input_options(bn_cmd, bn_args.in);
    bn_cmd->add_option("--xg-sweep", bn_args.sweep_spec, "sweep grid lo:hi:n");
    bn_cmd->add_option("--table", bn_args.table, "output table (default: stdout)");

    CalibrateArgs cal_args;
    auto* cal_cmd = app.add_subcommand(
        "calibrate", "sweep (c_g, c_1e) over the two-storage LP toward a target total LCOE");
    add_input_options(cal_cmd, cal_args.in);
    cal_cmd->add_option("--cg-grid", cal_args.cg_grid, "generation-cost grid lo:hi:n");
    cal_cmd->add_option("--c1e-grid", cal_args.c1e_grid, "ST1 energy-cost grid lo:hi:n");
    cal_cmd->add_option("--target", cal_args.target, "target total LCOE");
    cal_cmd->add_option("--table", cal_args.table, "grid table");

    OracleArgs oracle_args;
    auto* oracle_cmd = app.add_subcommand(
        "oracle", "brute-force certification: interval-max | greedy-feasible | min-capacity "
                  "| vertex-scan");
    add_input_options(oracle_cmd, oracle_args.in);
    oracle_cmd->add_option("--quantity", oracle_args.quantity, "which oracle to run");
    oracle_cmd->add_option("--xg", oracle_args.x_g, "generation capacity");
    oracle_cmd->add_option("--capacity", oracle_args.capacity, "storage capacity to test");
    oracle_cmd->add_option("--c-g", oracle_args.c_g, "generation cost (vertex-scan)");
    oracle_cmd->add_option("--c-s", oracle_args.c_s, "storage cost (vertex-scan)");
    oracle_cmd->add_option("--pf", oracle_args.pf_file, "production-function file");
    add_eff_options(oracle_cmd, oracle_args.eff);

    try {
        app.parse(argc, argv);
        if (prodfn_cmd->parsed()) run_prodfn(prodfn_args);
        else if (costfn_cmd->parsed()) run_costfn(costfn_args);
        else if (gd_cmd->parsed()) run_gd_curve(gd_args);
        else if (lp_cmd->parsed()) run_lp(lp_args);
        else if (bn_cmd->parsed()) run_bottleneck(bn_args);
        else if (cal_cmd->parsed()) run_calibrate(cal_args);
        else if (oracle_cmd->parsed()) run_oracle(oracle_args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const SolverError& e) {
        std::cerr << "solver: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
