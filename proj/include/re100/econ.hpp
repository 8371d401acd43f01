#pragma once

#include <string>
#include <vector>

#include "re100/envelope.hpp"

namespace re100 {

// Cost inputs of one technology for the single-LCOE calculation.
struct Financials {
    double capital_cost = 0.0;     // I, currency
    double fixed_om = 0.0;         // f, currency per period
    double variable_cost = 0.0;    // v, currency per kWh
    double discount_rate = 0.0;    // r
    int lifetime = 1;              // periods of use
    double capacity_factor = 1.0;  // c in (0, 1]
    double hours_per_period = 8760.0;  // n
};

// Uniform-series present-worth factor F(r, T): T when r = 0, otherwise
// ((1+r)^T - 1) / (r (1+r)^T).
double present_value_factor(double discount_rate, int periods);

// Single LCOE: (I/F + f) / (c n) + v.
double single_lcoe(const Financials& fin);

// Generation-share weighted average of single LCOEs.
double module_lcoe(const std::vector<double>& lcoes, const std::vector<double>& shares);

// Single LCOEs and annualized storage capacity costs. c_s is the annualized
// fixed cost per unit of storage energy capacity (not divided by discharged
// energy) - the convention that keeps the total LCOE linear. Defaults are the
// base-case settings: generation 4.7, battery energy 500 / power 10000,
// long-duration energy 10 / power-in 10000 / power-out 15000, all per year.
struct TechCosts {
    double c_g = 4.7;
    double c_s = 500.0;
    double c_1e = 500.0;
    double c_1p = 10000.0;
    double c_2e = 10.0;
    double c_2p_in = 10000.0;
    double c_2p_out = 15000.0;
    std::string currency = "JPY/kWh";
};

// Total LCOE of the system: c_g x_g + c_s x_s (capacities dimensionless).
double total_lcoe(const TechCosts& costs, double x_g, double x_s);
double total_lcoe(double c_g, double c_s, double x_g, double x_s);

// One cost-ratio region of the dual: vertex (x_g*, x_s*) is optimal exactly
// for rho = c_g / c_s in [rho_lo, rho_hi].
struct CostRegion {
    double rho_lo = 0.0;
    double rho_hi = 0.0;  // +inf for the first region
    CapacityPoint vertex;
};

struct OptimalCapacity {
    CapacityPoint vertex;
    double lcoe = 0.0;
    int region = 0;
};

// A piecewise-linear total-LCOE contour in the (c_g, c_s) plane. Points run
// from the c_s = 0 axis toward small cost ratios; when the production
// function reaches x_s = 0 the contour ends in a vertical ray (c_g constant,
// c_s upward from the last point).
struct Contour {
    double lcoe = 0.0;
    std::vector<std::pair<double, double>> points;  // (c_g, c_s)
    bool vertical_ray = false;
};

// The Legendre dual of a production function: a fan of cost-ratio regions
// partitioning (0, inf), each mapped to one optimal-capacity vertex.
class CostFunction {
public:
    explicit CostFunction(const ProductionFunction& pf);

    const std::vector<CostRegion>& regions() const { return regions_; }
    const ProductionFunction& source() const { return source_; }

private:
    std::vector<CostRegion> regions_;
    ProductionFunction source_;
};

CostFunction legendre(const ProductionFunction& pf);

// Vertex selected by the cost-ratio lookup plus its total LCOE. Boundary
// ratios resolve to the vertex with smaller x_g; the value is identical
// either way.
OptimalCapacity optimal_capacity(const CostFunction& cf, double c_g, double c_s);

// Exact piecewise-linear description of {(c_g, c_s) : min total LCOE = target}.
Contour contour(const CostFunction& cf, double lcoe_target);

}  // namespace re100
