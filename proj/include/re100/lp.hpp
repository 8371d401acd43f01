#pragma once

#include <optional>
#include <string>
#include <vector>

#include "re100/econ.hpp"
#include "re100/envelope.hpp"
#include "re100/profile.hpp"

namespace re100 {

enum class LpVariant { simplest, lossy, power_capped, two_storage, reduced_2var };

std::string to_string(LpVariant variant);
LpVariant lp_variant_from_string(const std::string& name);

// One storage technology: charge efficiency e_c <= 1, discharge factor
// e_d >= 1 (cycle efficiency e_c / e_d), and annualized capacity costs.
struct StorageTech {
    double charge_eff = 1.0;
    double discharge_factor = 1.0;
    double energy_cost = 0.0;
    double power_cost_in = 0.0;
    double power_cost_out = 0.0;

    double cycle_eff() const { return charge_eff / discharge_factor; }

    // Battery-like storage, cycle efficiency 0.8.
    static StorageTech st1();
    // Power-to-gas-to-power long-duration storage, cycle efficiency 0.4.
    static StorageTech st2();
};

enum class RowSense { le, eq, ge };

// A linear program in sparse row form. Rows are time-major with flow
// variables before state-of-charge ones; all variables are non-negative.
// Storage balance rows use periodic indexing (s_0 identified with s_T).
struct LpModel {
    struct Row {
        std::string name;
        RowSense sense = RowSense::le;
        double rhs = 0.0;
        std::vector<std::pair<int, double>> coeffs;
    };

    LpVariant variant = LpVariant::simplest;
    int t_steps = 0;
    std::vector<double> demand;
    std::vector<double> generation;
    TechCosts costs;
    std::vector<StorageTech> storages;

    std::vector<std::string> var_names;
    std::vector<double> objective;
    std::vector<Row> rows;

    int var_index(const std::string& name) const;
    // Pins a capacity variable with an extra equality row (used for
    // single-storage comparisons and sensitivity re-solves).
    void fix_variable(const std::string& name, double value);
};

// Builds the matrix form of one model variant.
//  - simplest:     vars [x_g, x_s] + per t [x1 x2 x3 s], rows per t
//                  [gen<=, demand=, balance=, soc<=]        (2+4T vars, 4T rows)
//  - lossy:        same shape; balance row scales charge by e_c and
//                  discharge by e_d (storages[0])
//  - power_capped: adds x_p plus per-t rows [charge<=x_p, e_d*discharge<=x_p]
//  - two_storage:  vars [x_g, x_1s, x_1p, x_2s, x_2p_in, x_2p_out] + per t
//                  [x1..x6, s1, s2], ten rows per t            (6+8T vars)
// Generation cost comes from costs.c_g; single-storage variants price energy
// capacity at costs.c_s (power at costs.c_1p); two_storage prices each
// storage from its StorageTech.
LpModel build(LpVariant variant, const std::vector<double>& demand,
              const std::vector<double>& generation, const TechCosts& costs = {},
              const std::vector<StorageTech>& storages = {});

LpModel build(LpVariant variant, const Profile& demand, const Profile& generation,
              const TechCosts& costs = {}, const std::vector<StorageTech>& storages = {});

// The equivalent 2-variable LP over all T^2 circular interval constraints
// x_s >= D_ij - x_g G_ij plus the cycle balance bound on x_g. Interval sums
// are re-accumulated naively here, independent of the hull machinery.
LpModel reduce_to_2var(const LpModel& model);

struct LpSolution {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::infeasible;
    double objective = 0.0;
    std::vector<double> x;
    long iterations = 0;
    // Largest constraint violation of the re-checked solution.
    double feasibility_gap = 0.0;

    double value(const LpModel& model, const std::string& var_name) const;
    // State-of-charge series of storage 0 or 1 (s_t for t = 1..T).
    std::vector<double> soc(const LpModel& model, int storage = 0) const;
};

struct SolveOptions {
    double tol_cost = 1e-9;        // reduced-cost threshold
    double tol_pivot = 1e-9;       // smallest usable pivot
    double tol_feasible = 1e-7;    // post-solve feasibility re-check
    long max_iterations = 0;       // 0 = automatic
    double max_tableau_bytes = 1280.0 * 1024 * 1024;
};

// Dense two-phase simplex with a deterministic pivot rule (largest reduced
// cost, lowest index on ties) and a Bland anti-cycling fallback after stalls.
// Optimal solutions are re-verified against the model rows; a failed
// re-check raises SolverError rather than returning a wrong answer.
// Desk-scale: time-indexed variants accept T <= 744.
LpSolution solve(const LpModel& model, const SolveOptions& options = {});

// Residual check of a candidate solution against the model as stated
// (printed senses), independent of the solver path.
double max_violation(const LpModel& model, const std::vector<double>& x);

// Post-solution report on the bottleneck period: unutilized generation
// inside it, state of charge at its boundaries, and the empirical
// trade-off slope dx_s/dx_g from perturbed re-solves, compared with the
// binding interval's generation sum.
struct BottleneckDiagnostics {
    Interval interval;
    double soc_at_start = 0.0;   // should be ~x_s ("fully charged")
    double soc_at_end = 0.0;     // should be ~0
    double unutilized_max = 0.0; // should be ~0
    double x_g = 0.0;
    double x_s = 0.0;
    std::optional<double> dxs_dxg;        // finite-difference re-solve
    std::optional<double> dxs_dxp;        // power-capped models only
    double gen_sum_expected = 0.0;        // G* of the binding interval
    double cost_ratio = 0.0;              // c_g / c_s
    bool conclusive = true;               // false near tied vertices
    std::string note;
};

BottleneckDiagnostics diagnostics(const LpModel& model, const LpSolution& solution);

}  // namespace re100
