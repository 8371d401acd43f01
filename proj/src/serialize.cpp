#include "re100/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "re100/errors.hpp"

namespace re100 {

namespace {

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

double parse_double(const std::string& tok) {
    if (tok == "inf") return std::numeric_limits<double>::infinity();
    if (tok == "-inf") return -std::numeric_limits<double>::infinity();
    return std::stod(tok);
}

// Token stream over non-comment lines.
class Lines {
public:
    explicit Lines(const std::string& text) : in_(text) {}

    bool next(std::vector<std::string>& tokens) {
        std::string line;
        while (std::getline(in_, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            tokens.clear();
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) tokens.push_back(tok);
            if (!tokens.empty()) return true;
        }
        return false;
    }

    std::vector<std::string> expect(const std::string& head) {
        std::vector<std::string> tokens;
        if (!next(tokens) || tokens[0] != head)
            throw ValidationError("parse: expected '" + head + "'" +
                                  (tokens.empty() ? "" : ", got '" + tokens[0] + "'"));
        return tokens;
    }

private:
    std::istringstream in_;
};

}  // namespace

std::string to_text(const ProductionFunction& pf) {
    std::ostringstream out;
    out << "re100 prodfn 1\n";
    out << "meta t_steps " << pf.steps() << "\n";
    out << "meta step_hours " << fmt(pf.step_hours()) << "\n";
    out << "meta xg_min " << fmt(pf.xg_min()) << "\n";
    const auto& bind = pf.binding_at_min();
    out << "meta binding_at_min " << bind.interval.start << " " << bind.interval.end << " "
        << fmt(bind.gen_sum) << " " << fmt(bind.dem_sum) << "\n";
    const auto& full = pf.full_cycle();
    out << "meta full_cycle " << fmt(full.gen_sum) << " " << fmt(full.dem_sum) << "\n";
    out << "segments " << pf.segments().size() << "\n";
    out << "# slope intercept xg_lo xg_hi interval_start interval_end\n";
    for (const auto& s : pf.segments())
        out << fmt(s.slope) << " " << fmt(s.intercept) << " " << fmt(s.xg_lo) << " "
            << fmt(s.xg_hi) << " " << s.interval.start << " " << s.interval.end << "\n";
    out << "vertices " << pf.vertices().size() << "\n";
    for (const auto& v : pf.vertices()) out << fmt(v.x_g) << " " << fmt(v.x_s) << "\n";
    out << "hull_points " << pf.hull_boundary().size() << "\n";
    out << "# gen_sum dem_sum interval_start interval_end\n";
    for (const auto& p : pf.hull_boundary())
        out << fmt(p.gen_sum) << " " << fmt(p.dem_sum) << " " << p.interval.start << " "
            << p.interval.end << "\n";
    out << "end prodfn\n";
    return out.str();
}

ProductionFunction production_function_from_text(const std::string& text) {
    Lines lines(text);
    auto head = lines.expect("re100");
    if (head.size() < 3 || head[1] != "prodfn")
        throw ValidationError("parse: not a prodfn document");

    int steps = 0;
    double step_hours = 1.0;
    PartialSumPoint binding, full;
    std::vector<Segment> segments;
    std::vector<CapacityPoint> vertices;
    std::vector<PartialSumPoint> hull;

    std::vector<std::string> tok;
    while (lines.next(tok)) {
        if (tok[0] == "end") break;
        if (tok[0] == "meta") {
            if (tok[1] == "t_steps") steps = std::stoi(tok[2]);
            else if (tok[1] == "step_hours") step_hours = parse_double(tok[2]);
            else if (tok[1] == "binding_at_min") {
                binding.interval = {std::stoi(tok[2]), std::stoi(tok[3])};
                binding.gen_sum = parse_double(tok[4]);
                binding.dem_sum = parse_double(tok[5]);
            } else if (tok[1] == "full_cycle") {
                full.gen_sum = parse_double(tok[2]);
                full.dem_sum = parse_double(tok[3]);
            }
            continue;
        }
        if (tok[0] == "segments") {
            int n = std::stoi(tok[1]);
            for (int i = 0; i < n; ++i) {
                if (!lines.next(tok)) throw ValidationError("parse: truncated segments");
                segments.push_back({parse_double(tok[0]), parse_double(tok[1]),
                                    parse_double(tok[2]), parse_double(tok[3]),
                                    {std::stoi(tok[4]), std::stoi(tok[5])}});
            }
            continue;
        }
        if (tok[0] == "vertices") {
            int n = std::stoi(tok[1]);
            for (int i = 0; i < n; ++i) {
                if (!lines.next(tok)) throw ValidationError("parse: truncated vertices");
                vertices.push_back({parse_double(tok[0]), parse_double(tok[1])});
            }
            continue;
        }
        if (tok[0] == "hull_points") {
            int n = std::stoi(tok[1]);
            for (int i = 0; i < n; ++i) {
                if (!lines.next(tok)) throw ValidationError("parse: truncated hull points");
                hull.push_back({{std::stoi(tok[2]), std::stoi(tok[3])},
                                parse_double(tok[0]),
                                parse_double(tok[1])});
            }
            continue;
        }
        throw ValidationError("parse: unexpected token '" + tok[0] + "'");
    }
    if (steps == 0 || segments.empty())
        throw ValidationError("parse: incomplete prodfn document");
    full.interval = {1, steps};
    return ProductionFunction(std::move(segments), std::move(vertices), binding, full,
                              std::move(hull), steps, step_hours);
}

std::string to_text(const BottleneckReport& report) {
    std::ostringstream out;
    out << "re100 bottleneck 1\n";
    out << "x_g " << fmt(report.x_g) << "\n";
    out << "x_s " << fmt(report.x_s) << "\n";
    out << "interval " << report.interval.start << " " << report.interval.end << "\n";
    out << "dem_sum " << fmt(report.dem_sum) << "\n";
    out << "gen_sum " << fmt(report.gen_sum) << "\n";
    out << "length_hours " << fmt(report.length_hours) << "\n";
    out << "degenerate " << (report.degenerate ? 1 : 0) << "\n";
    out << "end bottleneck\n";
    return out.str();
}

BottleneckReport bottleneck_report_from_text(const std::string& text) {
    Lines lines(text);
    auto head = lines.expect("re100");
    if (head.size() < 3 || head[1] != "bottleneck")
        throw ValidationError("parse: not a bottleneck document");
    BottleneckReport report;
    std::vector<std::string> tok;
    while (lines.next(tok)) {
        if (tok[0] == "end") break;
        if (tok[0] == "x_g") report.x_g = parse_double(tok[1]);
        else if (tok[0] == "x_s") report.x_s = parse_double(tok[1]);
        else if (tok[0] == "interval")
            report.interval = {std::stoi(tok[1]), std::stoi(tok[2])};
        else if (tok[0] == "dem_sum") report.dem_sum = parse_double(tok[1]);
        else if (tok[0] == "gen_sum") report.gen_sum = parse_double(tok[1]);
        else if (tok[0] == "length_hours") report.length_hours = parse_double(tok[1]);
        else if (tok[0] == "degenerate") report.degenerate = tok[1] == "1";
        else throw ValidationError("parse: unexpected token '" + tok[0] + "'");
    }
    return report;
}

std::string to_text(const CostFunction& cf, const TechCosts& costs) {
    std::ostringstream out;
    out << "re100 costfn 1\n";
    out << "meta currency " << costs.currency << "\n";
    out << "meta costs " << fmt(costs.c_g) << " " << fmt(costs.c_s) << " " << fmt(costs.c_1e)
        << " " << fmt(costs.c_1p) << " " << fmt(costs.c_2e) << " " << fmt(costs.c_2p_in) << " "
        << fmt(costs.c_2p_out) << "\n";
    out << "regions " << cf.regions().size() << "\n";
    out << "# rho_lo rho_hi xg xs\n";
    for (const auto& r : cf.regions())
        out << fmt(r.rho_lo) << " " << fmt(r.rho_hi) << " " << fmt(r.vertex.x_g) << " "
            << fmt(r.vertex.x_s) << "\n";
    out << to_text(cf.source());
    out << "end costfn\n";
    return out.str();
}

CostFunction cost_function_from_text(const std::string& text, TechCosts* costs) {
    Lines lines(text);
    auto head = lines.expect("re100");
    if (head.size() < 3 || head[1] != "costfn")
        throw ValidationError("parse: not a costfn document");

    TechCosts parsed;
    std::vector<std::string> tok;
    std::vector<CostRegion> regions;
    while (lines.next(tok)) {
        if (tok[0] == "end" && tok.size() > 1 && tok[1] == "costfn") break;
        if (tok[0] == "meta") {
            if (tok[1] == "currency") parsed.currency = tok[2];
            else if (tok[1] == "costs") {
                parsed.c_g = parse_double(tok[2]);
                parsed.c_s = parse_double(tok[3]);
                parsed.c_1e = parse_double(tok[4]);
                parsed.c_1p = parse_double(tok[5]);
                parsed.c_2e = parse_double(tok[6]);
                parsed.c_2p_in = parse_double(tok[7]);
                parsed.c_2p_out = parse_double(tok[8]);
            }
            continue;
        }
        if (tok[0] == "regions") {
            int n = std::stoi(tok[1]);
            for (int i = 0; i < n; ++i) {
                if (!lines.next(tok)) throw ValidationError("parse: truncated regions");
                regions.push_back({parse_double(tok[0]), parse_double(tok[1]),
                                   {parse_double(tok[2]), parse_double(tok[3])}});
            }
            continue;
        }
        if (tok[0] == "re100" && tok.size() > 1 && tok[1] == "prodfn") {
            // Re-slice the embedded document by whole non-comment lines.
            std::istringstream all(text);
            std::string line, embedded;
            bool inside = false;
            while (std::getline(all, line)) {
                if (!inside && line.rfind("re100 prodfn", 0) == 0) inside = true;
                if (inside) {
                    embedded += line + "\n";
                    if (line.rfind("end prodfn", 0) == 0) break;
                }
            }
            if (embedded.empty())
                throw ValidationError("parse: embedded prodfn not found");
            auto pf = production_function_from_text(embedded);
            if (costs) *costs = parsed;
            CostFunction cf = legendre(pf);
            // The regions are fully determined by the source function; the
            // serialized list is carried for readers, not re-imported.
            return cf;
        }
        throw ValidationError("parse: unexpected token '" + tok[0] + "'");
    }
    throw ValidationError("parse: costfn document has no embedded prodfn");
}

std::string to_text(const LpModel& model) {
    std::ostringstream out;
    out << "re100 lpmodel 1\n";
    out << "meta variant " << to_string(model.variant) << "\n";
    out << "meta t_steps " << model.t_steps << "\n";
    out << "vars " << model.var_names.size() << "\n";
    out << "# name objective_coefficient\n";
    for (std::size_t j = 0; j < model.var_names.size(); ++j)
        out << model.var_names[j] << " " << fmt(model.objective[j]) << "\n";
    out << "demand " << model.demand.size() << "\n";
    for (double v : model.demand) out << fmt(v) << "\n";
    out << "generation " << model.generation.size() << "\n";
    for (double v : model.generation) out << fmt(v) << "\n";
    out << "rows " << model.rows.size() << "\n";
    out << "# name sense rhs nnz (col value)*\n";
    for (const auto& row : model.rows) {
        out << row.name << " "
            << (row.sense == RowSense::le ? "<=" : row.sense == RowSense::ge ? ">=" : "=") << " "
            << fmt(row.rhs) << " " << row.coeffs.size();
        for (const auto& [col, v] : row.coeffs) out << " " << col << " " << fmt(v);
        out << "\n";
    }
    out << "end lpmodel\n";
    return out.str();
}

LpModel lp_model_from_text(const std::string& text) {
    Lines lines(text);
    auto head = lines.expect("re100");
    if (head.size() < 3 || head[1] != "lpmodel")
        throw ValidationError("parse: not an lpmodel document");
    LpModel model;
    std::vector<std::string> tok;
    while (lines.next(tok)) {
        if (tok[0] == "end") break;
        if (tok[0] == "meta") {
            if (tok[1] == "variant") model.variant = lp_variant_from_string(tok[2]);
            else if (tok[1] == "t_steps") model.t_steps = std::stoi(tok[2]);
            continue;
        }
        if (tok[0] == "vars") {
            int n = std::stoi(tok[1]);
            for (int i = 0; i < n; ++i) {
                if (!lines.next(tok)) throw ValidationError("parse: truncated vars");
                model.var_names.push_back(tok[0]);
                model.objective.push_back(parse_double(tok[1]));
            }
            continue;
        }
        if (tok[0] == "demand" || tok[0] == "generation") {
            int n = std::stoi(tok[1]);
            auto& dst = tok[0] == "demand" ? model.demand : model.generation;
            for (int i = 0; i < n; ++i) {
                if (!lines.next(tok)) throw ValidationError("parse: truncated series");
                dst.push_back(parse_double(tok[0]));
            }
            continue;
        }
        if (tok[0] == "rows") {
            int n = std::stoi(tok[1]);
            for (int i = 0; i < n; ++i) {
                if (!lines.next(tok)) throw ValidationError("parse: truncated rows");
                LpModel::Row row;
                row.name = tok[0];
                row.sense = tok[1] == "<=" ? RowSense::le
                            : tok[1] == ">=" ? RowSense::ge
                                             : RowSense::eq;
                row.rhs = parse_double(tok[2]);
                int nnz = std::stoi(tok[3]);
                for (int k = 0; k < nnz; ++k)
                    row.coeffs.emplace_back(std::stoi(tok[4 + 2 * static_cast<std::size_t>(k)]),
                                            parse_double(tok[5 + 2 * static_cast<std::size_t>(k)]));
                model.rows.push_back(std::move(row));
            }
            continue;
        }
        throw ValidationError("parse: unexpected token '" + tok[0] + "'");
    }
    return model;
}

std::string to_text(const LpSolution& solution) {
    std::ostringstream out;
    out << "re100 lpsolution 1\n";
    const char* status = solution.status == LpSolution::Status::optimal ? "optimal"
                         : solution.status == LpSolution::Status::infeasible ? "infeasible"
                                                                             : "unbounded";
    out << "meta status " << status << "\n";
    out << "meta objective " << fmt(solution.objective) << "\n";
    out << "meta iterations " << solution.iterations << "\n";
    out << "meta feasibility_gap " << fmt(solution.feasibility_gap) << "\n";
    out << "x " << solution.x.size() << "\n";
    for (double v : solution.x) out << fmt(v) << "\n";
    out << "end lpsolution\n";
    return out.str();
}

LpSolution lp_solution_from_text(const std::string& text) {
    Lines lines(text);
    auto head = lines.expect("re100");
    if (head.size() < 3 || head[1] != "lpsolution")
        throw ValidationError("parse: not an lpsolution document");
    LpSolution solution;
    std::vector<std::string> tok;
    while (lines.next(tok)) {
        if (tok[0] == "end") break;
        if (tok[0] == "meta") {
            if (tok[1] == "status")
                solution.status = tok[2] == "optimal" ? LpSolution::Status::optimal
                                  : tok[2] == "infeasible" ? LpSolution::Status::infeasible
                                                           : LpSolution::Status::unbounded;
            else if (tok[1] == "objective") solution.objective = parse_double(tok[2]);
            else if (tok[1] == "iterations") solution.iterations = std::stol(tok[2]);
            else if (tok[1] == "feasibility_gap")
                solution.feasibility_gap = parse_double(tok[2]);
            continue;
        }
        if (tok[0] == "x") {
            int n = std::stoi(tok[1]);
            for (int i = 0; i < n; ++i) {
                if (!lines.next(tok)) throw ValidationError("parse: truncated solution");
                solution.x.push_back(parse_double(tok[0]));
            }
            continue;
        }
        throw ValidationError("parse: unexpected token '" + tok[0] + "'");
    }
    return solution;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content,
                const std::string& comment_header) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    if (!comment_header.empty()) {
        std::istringstream lines(comment_header);
        std::string line;
        while (std::getline(lines, line)) out << "# " << line << "\n";
    }
    out << content;
}

}  // namespace re100
