#include "re100/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "re100/errors.hpp"

namespace re100 {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxTimeSteps = 744;  // one month hourly; full-year economics
                                    // flow through the envelope path
}  // namespace

StorageTech StorageTech::st1() {
    return StorageTech{std::pow(0.8, 0.5), std::pow(0.8, -0.5), 500.0, 10000.0, 10000.0};
}

StorageTech StorageTech::st2() {
    return StorageTech{0.8, 2.0, 10.0, 10000.0, 15000.0};
}

std::string to_string(LpVariant variant) {
    switch (variant) {
        case LpVariant::simplest: return "simplest";
        case LpVariant::lossy: return "lossy";
        case LpVariant::power_capped: return "power_capped";
        case LpVariant::two_storage: return "two_storage";
        case LpVariant::reduced_2var: return "reduced_2var";
    }
    return "?";
}

LpVariant lp_variant_from_string(const std::string& name) {
    if (name == "simplest") return LpVariant::simplest;
    if (name == "lossy") return LpVariant::lossy;
    if (name == "power_capped") return LpVariant::power_capped;
    if (name == "two_storage") return LpVariant::two_storage;
    if (name == "reduced_2var") return LpVariant::reduced_2var;
    throw ValidationError("unknown LP variant '" + name + "'");
}

int LpModel::var_index(const std::string& name) const {
    for (std::size_t j = 0; j < var_names.size(); ++j)
        if (var_names[j] == name) return static_cast<int>(j);
    throw ValidationError("model has no variable '" + name + "'");
}

void LpModel::fix_variable(const std::string& name, double value) {
    if (value < 0.0)
        throw ValidationError("fix_variable: variables are non-negative");
    Row row;
    row.name = "fix:" + name;
    row.sense = RowSense::eq;
    row.rhs = value;
    row.coeffs.emplace_back(var_index(name), 1.0);
    rows.push_back(std::move(row));
}

namespace {

void check_storage(const StorageTech& st) {
    if (!(st.charge_eff > 0.0 && st.charge_eff <= 1.0))
        throw ValidationError("storage charge efficiency must be in (0, 1]");
    if (!(st.discharge_factor >= 1.0))
        throw ValidationError("storage discharge factor must be >= 1");
    if (st.energy_cost < 0.0 || st.power_cost_in < 0.0 || st.power_cost_out < 0.0)
        throw ValidationError("storage costs must be non-negative");
}

std::string tvar(const std::string& base, int t) {
    return base + "[" + std::to_string(t) + "]";
}

}  // namespace

LpModel build(LpVariant variant, const std::vector<double>& demand,
              const std::vector<double>& generation, const TechCosts& costs,
              const std::vector<StorageTech>& storages) {
    if (variant == LpVariant::reduced_2var)
        throw ValidationError("build: use reduce_to_2var for the reduced model");
    const int t_steps = static_cast<int>(demand.size());
    if (t_steps < 2 || generation.size() != demand.size())
        throw ValidationError("build: demand and generation need equal length >= 2");
    for (int t = 0; t < t_steps; ++t) {
        if (demand[static_cast<std::size_t>(t)] < 0.0 ||
            generation[static_cast<std::size_t>(t)] < 0.0)
            throw ValidationError("build: negative profile value at step " +
                                  std::to_string(t + 1));
    }
    if (costs.c_g < 0.0 || costs.c_s < 0.0 || costs.c_1p < 0.0)
        throw ValidationError("build: costs must be non-negative");

    LpModel model;
    model.variant = variant;
    model.t_steps = t_steps;
    model.demand = demand;
    model.generation = generation;
    model.costs = costs;

    if (variant == LpVariant::two_storage) {
        model.storages = storages.empty()
                             ? std::vector<StorageTech>{StorageTech::st1(), StorageTech::st2()}
                             : storages;
        if (model.storages.size() != 2)
            throw ValidationError("two_storage: exactly 2 storage technologies required");
    } else {
        model.storages = storages.empty() ? std::vector<StorageTech>{StorageTech{}}
                                          : std::vector<StorageTech>{storages.front()};
    }
    for (const auto& st : model.storages) check_storage(st);

    auto add_row = [&](std::string name, RowSense sense, double rhs,
                       std::vector<std::pair<int, double>> coeffs) {
        model.rows.push_back({std::move(name), sense, rhs, std::move(coeffs)});
    };

    if (variant != LpVariant::two_storage) {
        const bool capped = variant == LpVariant::power_capped;
        const StorageTech& st = model.storages.front();
        const double e_c = variant == LpVariant::simplest ? 1.0 : st.charge_eff;
        const double e_d = variant == LpVariant::simplest ? 1.0 : st.discharge_factor;

        const int head = capped ? 3 : 2;
        model.var_names = {"x_g", "x_s"};
        model.objective = {costs.c_g, costs.c_s};
        if (capped) {
            model.var_names.push_back("x_p");
            model.objective.push_back(costs.c_1p);
        }
        const int per_t = 4;
        auto x1 = [&](int tt) { return head + per_t * tt + 0; };
        auto x2 = [&](int tt) { return head + per_t * tt + 1; };
        auto x3 = [&](int tt) { return head + per_t * tt + 2; };
        auto s = [&](int tt) { return head + per_t * tt + 3; };
        for (int tt = 0; tt < t_steps; ++tt) {
            model.var_names.push_back(tvar("x1", tt + 1));
            model.var_names.push_back(tvar("x2", tt + 1));
            model.var_names.push_back(tvar("x3", tt + 1));
            model.var_names.push_back(tvar("s", tt + 1));
            model.objective.insert(model.objective.end(), {0.0, 0.0, 0.0, 0.0});
        }
        for (int tt = 0; tt < t_steps; ++tt) {
            const int t = tt + 1;
            const int prev = (tt + t_steps - 1) % t_steps;
            add_row(tvar("gen", t), RowSense::le, 0.0,
                    {{x1(tt), 1.0}, {x2(tt), 1.0}, {0, -generation[static_cast<std::size_t>(tt)]}});
            add_row(tvar("demand", t), RowSense::eq, demand[static_cast<std::size_t>(tt)],
                    {{x1(tt), 1.0}, {x3(tt), 1.0}});
            add_row(tvar("balance", t), RowSense::eq, 0.0,
                    {{x2(tt), e_c}, {x3(tt), -e_d}, {s(prev), 1.0}, {s(tt), -1.0}});
            add_row(tvar("soc", t), RowSense::le, 0.0, {{s(tt), 1.0}, {1, -1.0}});
            if (capped) {
                add_row(tvar("charge_cap", t), RowSense::le, 0.0, {{x2(tt), 1.0}, {2, -1.0}});
                add_row(tvar("discharge_cap", t), RowSense::le, 0.0,
                        {{x3(tt), e_d}, {2, -1.0}});
            }
        }
        return model;
    }

    // two_storage
    const StorageTech& st1 = model.storages[0];
    const StorageTech& st2 = model.storages[1];
    model.var_names = {"x_g", "x_1s", "x_1p", "x_2s", "x_2p_in", "x_2p_out"};
    model.objective = {costs.c_g,        st1.energy_cost, st1.power_cost_in,
                       st2.energy_cost, st2.power_cost_in, st2.power_cost_out};
    const int head = 6;
    const int per_t = 8;
    auto fv = [&](int tt, int k) { return head + per_t * tt + k; };  // x1..x6, s1, s2
    for (int tt = 0; tt < t_steps; ++tt) {
        for (int k = 1; k <= 6; ++k)
            model.var_names.push_back(tvar("x" + std::to_string(k), tt + 1));
        model.var_names.push_back(tvar("s1", tt + 1));
        model.var_names.push_back(tvar("s2", tt + 1));
        model.objective.insert(model.objective.end(), per_t, 0.0);
    }
    for (int tt = 0; tt < t_steps; ++tt) {
        const int t = tt + 1;
        const int prev = (tt + t_steps - 1) % t_steps;
        add_row(tvar("gen", t), RowSense::le, 0.0,
                {{fv(tt, 0), 1.0},
                 {fv(tt, 1), 1.0},
                 {fv(tt, 3), 1.0},
                 {0, -generation[static_cast<std::size_t>(tt)]}});
        add_row(tvar("demand", t), RowSense::ge, demand[static_cast<std::size_t>(tt)],
                {{fv(tt, 0), 1.0}, {fv(tt, 2), 1.0}, {fv(tt, 4), 1.0}});
        add_row(tvar("balance1", t), RowSense::eq, 0.0,
                {{fv(tt, 1), st1.charge_eff},
                 {fv(tt, 2), -st1.discharge_factor},
                 {fv(tt, 5), -st1.discharge_factor},
                 {fv(prev, 6), 1.0},
                 {fv(tt, 6), -1.0}});
        add_row(tvar("balance2", t), RowSense::eq, 0.0,
                {{fv(tt, 3), st2.charge_eff},
                 {fv(tt, 5), st2.charge_eff},
                 {fv(tt, 4), -st2.discharge_factor},
                 {fv(prev, 7), 1.0},
                 {fv(tt, 7), -1.0}});
        add_row(tvar("soc1", t), RowSense::le, 0.0, {{fv(tt, 6), 1.0}, {1, -1.0}});
        add_row(tvar("soc2", t), RowSense::le, 0.0, {{fv(tt, 7), 1.0}, {3, -1.0}});
        add_row(tvar("pow1_in", t), RowSense::le, 0.0, {{fv(tt, 1), 1.0}, {2, -1.0}});
        add_row(tvar("pow1_out", t), RowSense::le, 0.0,
                {{fv(tt, 2), st1.discharge_factor},
                 {fv(tt, 5), st1.discharge_factor},
                 {2, -1.0}});
        add_row(tvar("pow2_in", t), RowSense::le, 0.0,
                {{fv(tt, 3), 1.0}, {fv(tt, 5), 1.0}, {4, -1.0}});
        add_row(tvar("pow2_out", t), RowSense::le, 0.0,
                {{fv(tt, 4), st2.discharge_factor}, {5, -1.0}});
    }
    return model;
}

LpModel build(LpVariant variant, const Profile& demand, const Profile& generation,
              const TechCosts& costs, const std::vector<StorageTech>& storages) {
    return build(variant, demand.values(), generation.values(), costs, storages);
}

LpModel reduce_to_2var(const LpModel& model) {
    if (model.variant != LpVariant::simplest)
        throw ValidationError("reduce_to_2var: only the simplest variant reduces");
    const int t_steps = model.t_steps;
    const auto& d = model.demand;
    const auto& g = model.generation;

    LpModel reduced;
    reduced.variant = LpVariant::reduced_2var;
    reduced.t_steps = t_steps;
    reduced.demand = d;
    reduced.generation = g;
    reduced.costs = model.costs;
    reduced.var_names = {"x_g", "x_s"};
    reduced.objective = {model.costs.c_g, model.costs.c_s};

    for (int i = 0; i < t_steps; ++i) {
        double gen_sum = 0.0, dem_sum = 0.0;
        for (int len = 1; len <= t_steps; ++len) {
            int t = (i + len - 1) % t_steps;
            gen_sum += g[static_cast<std::size_t>(t)];
            dem_sum += d[static_cast<std::size_t>(t)];
            reduced.rows.push_back({"iv[" + std::to_string(i + 1) + "," + std::to_string(len) + "]",
                                    RowSense::ge, dem_sum,
                                    {{0, gen_sum}, {1, 1.0}}});
        }
    }
    // Cycle balance: periodic storage cannot create energy.
    double dem_total = 0.0, gen_total = 0.0;
    for (int t = 0; t < t_steps; ++t) {
        dem_total += d[static_cast<std::size_t>(t)];
        gen_total += g[static_cast<std::size_t>(t)];
    }
    reduced.rows.push_back({"cycle", RowSense::ge, dem_total, {{0, gen_total}}});
    return reduced;
}

double max_violation(const LpModel& model, const std::vector<double>& x) {
    double worst = 0.0;
    for (double v : x) worst = std::max(worst, -v);
    for (const auto& row : model.rows) {
        double lhs = 0.0;
        for (const auto& [col, coef] : row.coeffs)
            lhs += coef * x[static_cast<std::size_t>(col)];
        switch (row.sense) {
            case RowSense::le: worst = std::max(worst, lhs - row.rhs); break;
            case RowSense::ge: worst = std::max(worst, row.rhs - lhs); break;
            case RowSense::eq: worst = std::max(worst, std::abs(lhs - row.rhs)); break;
        }
    }
    return worst;
}

double LpSolution::value(const LpModel& model, const std::string& var_name) const {
    return x[static_cast<std::size_t>(model.var_index(var_name))];
}

std::vector<double> LpSolution::soc(const LpModel& model, int storage) const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(model.t_steps));
    std::string base = model.variant == LpVariant::two_storage
                           ? (storage == 0 ? "s1" : "s2")
                           : "s";
    for (int t = 1; t <= model.t_steps; ++t)
        out.push_back(value(model, tvar(base, t)));
    return out;
}

// ---------------------------------------------------------------------------
// Dense two-phase simplex.
// ---------------------------------------------------------------------------

namespace {

struct StandardForm {
    int n_struct = 0;
    int n_total = 0;
    int art_begin = 0;
    int m = 0;
    std::vector<double> a;      // m x n_total, row-major
    std::vector<double> rhs;    // >= 0
    std::vector<int> basis;     // basic column per row
    // Non-structural column -> (row, +-1) in the sign-normalized system.
    std::vector<std::pair<int, double>> aux;
    std::vector<double> row_sign;  // +-1 applied to the model row
};

StandardForm assemble(const LpModel& model) {
    StandardForm sf;
    sf.n_struct = static_cast<int>(model.objective.size());
    sf.m = static_cast<int>(model.rows.size());

    int n_slack = 0, n_art = 0;
    std::vector<RowSense> senses(static_cast<std::size_t>(sf.m));
    sf.row_sign.assign(static_cast<std::size_t>(sf.m), 1.0);
    for (int i = 0; i < sf.m; ++i) {
        const auto& row = model.rows[static_cast<std::size_t>(i)];
        RowSense sense = row.sense;
        if (row.rhs < 0.0) {
            sf.row_sign[static_cast<std::size_t>(i)] = -1.0;
            if (sense == RowSense::le)
                sense = RowSense::ge;
            else if (sense == RowSense::ge)
                sense = RowSense::le;
        }
        senses[static_cast<std::size_t>(i)] = sense;
        if (sense != RowSense::eq) ++n_slack;
        if (sense != RowSense::le) ++n_art;
    }
    sf.art_begin = sf.n_struct + n_slack;
    sf.n_total = sf.art_begin + n_art;

    sf.a.assign(static_cast<std::size_t>(sf.m) * sf.n_total, 0.0);
    sf.rhs.assign(static_cast<std::size_t>(sf.m), 0.0);
    sf.basis.assign(static_cast<std::size_t>(sf.m), -1);
    sf.aux.assign(static_cast<std::size_t>(sf.n_total - sf.n_struct), {0, 0.0});

    int slack = sf.n_struct;
    int art = sf.art_begin;
    for (int i = 0; i < sf.m; ++i) {
        const auto& row = model.rows[static_cast<std::size_t>(i)];
        double sign = sf.row_sign[static_cast<std::size_t>(i)];
        double* arow = sf.a.data() + static_cast<std::size_t>(i) * sf.n_total;
        for (const auto& [col, coef] : row.coeffs) arow[col] += sign * coef;
        sf.rhs[static_cast<std::size_t>(i)] = sign * row.rhs;
        RowSense sense = senses[static_cast<std::size_t>(i)];
        if (sense == RowSense::le) {
            arow[slack] = 1.0;
            sf.aux[static_cast<std::size_t>(slack - sf.n_struct)] = {i, 1.0};
            sf.basis[static_cast<std::size_t>(i)] = slack++;
        } else if (sense == RowSense::ge) {
            arow[slack] = -1.0;
            sf.aux[static_cast<std::size_t>(slack - sf.n_struct)] = {i, -1.0};
            ++slack;
            arow[art] = 1.0;
            sf.aux[static_cast<std::size_t>(art - sf.n_struct)] = {i, 1.0};
            sf.basis[static_cast<std::size_t>(i)] = art++;
        } else {
            arow[art] = 1.0;
            sf.aux[static_cast<std::size_t>(art - sf.n_struct)] = {i, 1.0};
            sf.basis[static_cast<std::size_t>(i)] = art++;
        }
    }
    return sf;
}

class SimplexTableau {
public:
    SimplexTableau(StandardForm sf, const std::vector<double>& objective,
                   const SolveOptions& options)
        : sf_(std::move(sf)), options_(options) {
        cost2_.assign(static_cast<std::size_t>(sf_.n_total), 0.0);
        for (int j = 0; j < sf_.n_struct; ++j)
            cost2_[static_cast<std::size_t>(j)] = objective[static_cast<std::size_t>(j)];
        cost1_.assign(static_cast<std::size_t>(sf_.n_total), 0.0);
        for (int j = sf_.art_begin; j < sf_.n_total; ++j)
            cost1_[static_cast<std::size_t>(j)] = 1.0;
        // Price out the initial basis (artificials carry phase-1 cost 1).
        for (int i = 0; i < sf_.m; ++i) {
            if (sf_.basis[static_cast<std::size_t>(i)] < sf_.art_begin) continue;
            const double* arow = row(i);
            for (int j = 0; j < sf_.n_total; ++j) cost1_[static_cast<std::size_t>(j)] -= arow[j];
            z1_ -= sf_.rhs[static_cast<std::size_t>(i)];
        }
    }

    // Returns optimal/infeasible/unbounded for the combined two phases.
    LpSolution::Status run(long max_iterations) {
        max_iterations_ = max_iterations;
        iterate(cost1_, z1_, /*phase1=*/true);
        if (-z1_ > 1e-8 * (1.0 + rhs_scale())) return LpSolution::Status::infeasible;
        purge_artificials();
        if (!iterate(cost2_, z2_, /*phase1=*/false)) return LpSolution::Status::unbounded;
        return LpSolution::Status::optimal;
    }

    std::vector<double> extract() const {
        std::vector<double> x(static_cast<std::size_t>(sf_.n_total), 0.0);
        for (int i = 0; i < sf_.m; ++i)
            x[static_cast<std::size_t>(sf_.basis[static_cast<std::size_t>(i)])] =
                sf_.rhs[static_cast<std::size_t>(i)];
        x.resize(static_cast<std::size_t>(sf_.n_struct));
        return x;
    }

    const StandardForm& form() const { return sf_; }
    long iterations() const { return iterations_; }

private:
    double* row(int i) { return sf_.a.data() + static_cast<std::size_t>(i) * sf_.n_total; }
    const double* row(int i) const {
        return sf_.a.data() + static_cast<std::size_t>(i) * sf_.n_total;
    }

    double rhs_scale() const {
        double s = 0.0;
        for (double v : sf_.rhs) s = std::max(s, std::abs(v));
        return s;
    }

    int entering(const std::vector<double>& cost) const {
        const int limit = sf_.art_begin;  // artificials never re-enter
        int best = -1;
        double best_cost = -options_.tol_cost;
        for (int j = 0; j < limit; ++j) {
            double c = cost[static_cast<std::size_t>(j)];
            if (bland_ ? c < -options_.tol_cost : c < best_cost) {
                best = j;
                best_cost = c;
                if (bland_) break;
            }
        }
        return best;
    }

    int leaving(int enter) const {
        int best = -1;
        double best_ratio = kInf;
        for (int i = 0; i < sf_.m; ++i) {
            double a = row(i)[enter];
            if (a <= options_.tol_pivot) continue;
            double ratio = sf_.rhs[static_cast<std::size_t>(i)] / a;
            if (ratio < best_ratio) {
                best = i;
                best_ratio = ratio;
            } else if (ratio == best_ratio && best >= 0) {
                int cand = sf_.basis[static_cast<std::size_t>(i)];
                int cur = sf_.basis[static_cast<std::size_t>(best)];
                if (!bland_) {
                    // Prefer kicking artificials out, then the lowest index.
                    bool cand_art = cand >= sf_.art_begin;
                    bool cur_art = cur >= sf_.art_begin;
                    if (cand_art != cur_art ? cand_art : cand < cur) best = i;
                } else if (cand < cur) {
                    best = i;
                }
            }
        }
        return best;
    }

    void pivot(int r, int e) {
        double* prow = row(r);
        const double inv = 1.0 / prow[e];
        for (int j = 0; j < sf_.n_total; ++j) prow[j] *= inv;
        prow[e] = 1.0;
        sf_.rhs[static_cast<std::size_t>(r)] *= inv;

        auto eliminate = [&](double* target, double& target_rhs) {
            double f = target[e];
            if (f == 0.0) return;
            for (int j = 0; j < sf_.n_total; ++j) target[j] -= f * prow[j];
            target[e] = 0.0;
            target_rhs -= f * sf_.rhs[static_cast<std::size_t>(r)];
        };
        for (int i = 0; i < sf_.m; ++i) {
            if (i == r) continue;
            eliminate(row(i), sf_.rhs[static_cast<std::size_t>(i)]);
            // Guard feasibility against rounding drift.
            double& b = sf_.rhs[static_cast<std::size_t>(i)];
            if (b < 0.0 && b > -1e-11) b = 0.0;
        }
        eliminate(cost1_.data(), z1_);
        eliminate(cost2_.data(), z2_);
        sf_.basis[static_cast<std::size_t>(r)] = e;
        ++iterations_;
    }

    // Returns false when the phase objective is unbounded below (phase 1 is
    // bounded by construction, so there it just ends the phase).
    bool iterate(std::vector<double>& cost, double& z, bool phase1) {
        long stall = 0;
        double last_z = z;
        while (true) {
            int e = entering(cost);
            if (e < 0) return true;  // optimal for this phase
            int r = leaving(e);
            if (r < 0) return phase1;  // no blocking row: unbounded
            pivot(r, e);
            if (iterations_ > max_iterations_)
                throw SolverError("simplex stalled after " + std::to_string(iterations_) +
                                  " iterations");
            if (std::abs(z - last_z) <= 1e-13 * (1.0 + std::abs(z))) {
                if (++stall > stall_limit() && !bland_) bland_ = true;
            } else {
                stall = 0;
                last_z = z;
            }
        }
    }

    long stall_limit() const { return 500 + 2L * sf_.m; }

    // After phase 1, pivot leftover artificials out of the basis; rows that
    // cannot be pivoted are redundant and get dropped.
    void purge_artificials() {
        std::vector<int> redundant;
        for (int i = 0; i < sf_.m; ++i) {
            if (sf_.basis[static_cast<std::size_t>(i)] < sf_.art_begin) continue;
            const double* arow = row(i);
            int e = -1;
            for (int j = 0; j < sf_.art_begin; ++j) {
                if (std::abs(arow[j]) > options_.tol_pivot) {
                    e = j;
                    break;
                }
            }
            if (e >= 0)
                pivot(i, e);  // degenerate pivot: rhs is 0 here
            else
                redundant.push_back(i);
        }
        for (auto it = redundant.rbegin(); it != redundant.rend(); ++it) drop_row(*it);
        // Artificial columns never re-enter; zero their phase-2 cost view by
        // construction (entering() already excludes them).
    }

    void drop_row(int r) {
        int last = sf_.m - 1;
        if (r != last) {
            std::copy(row(last), row(last) + sf_.n_total, row(r));
            sf_.rhs[static_cast<std::size_t>(r)] = sf_.rhs[static_cast<std::size_t>(last)];
            sf_.basis[static_cast<std::size_t>(r)] = sf_.basis[static_cast<std::size_t>(last)];
        }
        sf_.a.resize(static_cast<std::size_t>(last) * sf_.n_total);
        sf_.rhs.pop_back();
        sf_.basis.pop_back();
        sf_.m = last;
    }

    StandardForm sf_;
    SolveOptions options_;
    std::vector<double> cost1_, cost2_;
    double z1_ = 0.0, z2_ = 0.0;  // negated objective values
    bool bland_ = false;
    long iterations_ = 0;
    long max_iterations_ = 0;
};

// Re-solves the optimal basis system B x_B = b against the original column
// data to strip tableau rounding drift. Returns false when B is singular at
// working precision.
bool refine_basis_solution(const LpModel& model, const StandardForm& sf,
                           const std::vector<int>& basis, std::vector<double>& x_out) {
    const int m = static_cast<int>(basis.size());
    if (m == 0) return false;

    // Column-major rebuild of the sign-normalized standard form.
    std::vector<double> B(static_cast<std::size_t>(m) * m, 0.0);
    std::vector<double> b(static_cast<std::size_t>(m));
    // Map original row index -> current row position. Rows may have been
    // dropped as redundant; surviving rows are identified through sf.rhs
    // being rebuilt below, so recompute from the model instead.
    // sf here is the post-solve form: row order changed only by drop_row
    // swaps, and sf keeps no original ids. Rebuild directly from the model
    // when no rows were dropped; otherwise skip refinement.
    if (m != static_cast<int>(model.rows.size())) return false;

    for (int i = 0; i < m; ++i)
        b[static_cast<std::size_t>(i)] =
            sf.row_sign[static_cast<std::size_t>(i)] * model.rows[static_cast<std::size_t>(i)].rhs;
    for (int k = 0; k < m; ++k) {
        int col = basis[static_cast<std::size_t>(k)];
        if (col >= sf.art_begin) return false;  // artificial left basic
        if (col < sf.n_struct) {
            for (int i = 0; i < m; ++i) {
                const auto& rowdef = model.rows[static_cast<std::size_t>(i)];
                for (const auto& [c, v] : rowdef.coeffs)
                    if (c == col)
                        B[static_cast<std::size_t>(i) * m + k] +=
                            sf.row_sign[static_cast<std::size_t>(i)] * v;
            }
        } else {
            auto [r, v] = sf.aux[static_cast<std::size_t>(col - sf.n_struct)];
            B[static_cast<std::size_t>(r) * m + k] = v;
        }
    }

    // LU with partial pivoting.
    std::vector<int> perm(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int k = 0; k < m; ++k) {
        int piv = k;
        double best = std::abs(B[static_cast<std::size_t>(k) * m + k]);
        for (int i = k + 1; i < m; ++i) {
            double v = std::abs(B[static_cast<std::size_t>(i) * m + k]);
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best < 1e-12) return false;
        if (piv != k) {
            for (int j = 0; j < m; ++j)
                std::swap(B[static_cast<std::size_t>(k) * m + j],
                          B[static_cast<std::size_t>(piv) * m + j]);
            std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(piv)]);
        }
        double inv = 1.0 / B[static_cast<std::size_t>(k) * m + k];
        for (int i = k + 1; i < m; ++i) {
            double f = B[static_cast<std::size_t>(i) * m + k] * inv;
            if (f == 0.0) continue;
            B[static_cast<std::size_t>(i) * m + k] = 0.0;
            for (int j = k + 1; j < m; ++j)
                B[static_cast<std::size_t>(i) * m + j] -= f * B[static_cast<std::size_t>(k) * m + j];
            b[static_cast<std::size_t>(i)] -= f * b[static_cast<std::size_t>(k)];
        }
    }
    for (int k = m - 1; k >= 0; --k) {
        double v = b[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < m; ++j)
            v -= B[static_cast<std::size_t>(k) * m + j] * b[static_cast<std::size_t>(j)];
        b[static_cast<std::size_t>(k)] = v / B[static_cast<std::size_t>(k) * m + k];
    }

    std::vector<double> x(static_cast<std::size_t>(sf.n_struct), 0.0);
    for (int k = 0; k < m; ++k) {
        int col = basis[static_cast<std::size_t>(k)];
        if (col < sf.n_struct) x[static_cast<std::size_t>(col)] = b[static_cast<std::size_t>(k)];
    }
    x_out = std::move(x);
    return true;
}

}  // namespace

LpSolution solve(const LpModel& model, const SolveOptions& options) {
    if (model.variant != LpVariant::reduced_2var && model.t_steps > kMaxTimeSteps)
        throw ResourceError("solve: T = " + std::to_string(model.t_steps) +
                            " exceeds the desk-scale bound " + std::to_string(kMaxTimeSteps));
    {
        // Tableau footprint guard: (m+2) rows of n_total columns.
        std::size_t m = model.rows.size();
        std::size_t n_total = model.objective.size();
        for (const auto& row : model.rows) {
            if (row.sense != RowSense::eq) ++n_total;  // slack or surplus
            if (row.sense != RowSense::le) ++n_total;  // artificial
        }
        double bytes = static_cast<double>(m + 2) * static_cast<double>(n_total) * 8.0;
        if (bytes > options.max_tableau_bytes)
            throw ResourceError("solve: tableau would need " +
                                std::to_string(bytes / (1024.0 * 1024.0)) + " MiB");
    }

    StandardForm sf = assemble(model);
    SimplexTableau tableau(std::move(sf), model.objective, options);
    long max_iters = options.max_iterations > 0
                         ? options.max_iterations
                         : 2000 + 60L * (tableau.form().m + tableau.form().n_total);

    LpSolution solution;
    solution.status = tableau.run(max_iters);
    solution.iterations = tableau.iterations();
    if (solution.status != LpSolution::Status::optimal) return solution;

    solution.x = tableau.extract();
    std::vector<double> refined;
    if (refine_basis_solution(model, tableau.form(), tableau.form().basis, refined)) {
        if (max_violation(model, refined) <= max_violation(model, solution.x))
            solution.x = std::move(refined);
    }
    for (double& v : solution.x)
        if (std::abs(v) < 1e-11) v = 0.0;
    solution.feasibility_gap = max_violation(model, solution.x);
    if (solution.feasibility_gap > options.tol_feasible)
        throw SolverError("optimal basis fails the feasibility re-check (violation " +
                          std::to_string(solution.feasibility_gap) + ")");
    double objective = 0.0;
    for (std::size_t j = 0; j < solution.x.size(); ++j)
        objective += model.objective[j] * solution.x[j];
    solution.objective = objective;
    return solution;
}

// ---------------------------------------------------------------------------
// Bottleneck diagnostics.
// ---------------------------------------------------------------------------

BottleneckDiagnostics diagnostics(const LpModel& model, const LpSolution& solution) {
    if (solution.status != LpSolution::Status::optimal)
        throw ValidationError("diagnostics: needs an optimal solution");
    const int t_steps = model.t_steps;
    const bool two = model.variant == LpVariant::two_storage;

    BottleneckDiagnostics diag;
    diag.x_g = solution.value(model, "x_g");
    double x_s;
    std::vector<double> soc;
    if (two) {
        // Usually ST2 carries the bottleneck (half cycle from full to
        // empty); fall back to ST1 when ST2 is not built.
        double x_1s = solution.value(model, "x_1s");
        double x_2s = solution.value(model, "x_2s");
        int storage = x_2s >= x_1s ? 1 : 0;
        x_s = storage == 1 ? x_2s : x_1s;
        soc = solution.soc(model, storage);
    } else {
        x_s = solution.value(model, "x_s");
        soc = solution.soc(model, 0);
    }
    diag.x_s = x_s;
    if (model.costs.c_s > 0.0) diag.cost_ratio = model.costs.c_g / model.costs.c_s;

    const double tol = 1e-7 + 1e-6 * std::max(1.0, x_s);
    if (x_s <= tol) {
        diag.interval = Interval{1, t_steps};
        diag.conclusive = false;
        diag.note = "no storage needed; bottleneck undefined";
        return diag;
    }

    // End of the bottleneck: first step where the store runs empty.
    int end = 0;
    double low = kInf;
    for (int t = 0; t < t_steps; ++t) {
        if (soc[static_cast<std::size_t>(t)] < low - 1e-12) {
            low = soc[static_cast<std::size_t>(t)];
            end = t;
        }
    }
    // Start: the step after the most recent full charge before `end`.
    int start = end;
    for (int back = 1; back < t_steps; ++back) {
        int t = (end - back + t_steps) % t_steps;
        if (soc[static_cast<std::size_t>(t)] >= x_s - tol) {
            start = (t + 1) % t_steps;
            break;
        }
    }
    diag.interval = Interval{start + 1, end + 1};
    diag.soc_at_start = soc[static_cast<std::size_t>((start + t_steps - 1) % t_steps)];
    diag.soc_at_end = soc[static_cast<std::size_t>(end)];

    // Unutilized generation inside the interval.
    double worst = -kInf;
    for (int t = start;; t = (t + 1) % t_steps) {
        double out = solution.value(model, tvar("x1", t + 1)) +
                     solution.value(model, tvar("x2", t + 1));
        if (two) out += solution.value(model, tvar("x4", t + 1));
        worst = std::max(worst,
                         diag.x_g * model.generation[static_cast<std::size_t>(t)] - out);
        if (t == end) break;
    }
    diag.unutilized_max = worst;

    // Empirical trade-off slope from a forward re-solve with pinned
    // capacities (only variants with a single x_s expose it).
    if (!two) {
        const double delta = 1e-4;
        try {
            LpModel fixed = model;
            fixed.fix_variable("x_g", diag.x_g + delta);
            if (model.variant == LpVariant::power_capped)
                fixed.fix_variable("x_p", solution.value(model, "x_p"));
            LpSolution forward = solve(fixed);
            if (forward.status == LpSolution::Status::optimal) {
                diag.dxs_dxg = (forward.value(fixed, "x_s") - x_s) / delta;

                ProductionFunction pf =
                    partial_sum_hull(normalize(model.demand, ProfileKind::demand, "d"),
                                     normalize(model.generation, ProfileKind::generation, "g"));
                diag.gen_sum_expected = pf.bottleneck_at(diag.x_g + 0.5 * delta).gen_sum;
            }
            if (model.variant == LpVariant::power_capped) {
                LpModel fixed_p = model;
                fixed_p.fix_variable("x_g", diag.x_g);
                fixed_p.fix_variable("x_p", solution.value(model, "x_p") + delta);
                LpSolution forward = solve(fixed_p);
                if (forward.status == LpSolution::Status::optimal)
                    diag.dxs_dxp = (forward.value(fixed_p, "x_s") - x_s) / delta;
            }
        } catch (const Error&) {
            diag.conclusive = false;
            diag.note = "sensitivity re-solve failed";
        }
        if (diag.dxs_dxg && model.variant == LpVariant::simplest) {
            if (std::abs(*diag.dxs_dxg + diag.gen_sum_expected) > 1e-3) {
                diag.conclusive = false;
                diag.note = "trade-off slope disagrees with the binding interval "
                            "(degenerate or tied optimum)";
            }
        }
    }
    return diag;
}

}  // namespace re100
