#include "re100/econ.hpp"

#include <cmath>
#include <limits>

#include "re100/errors.hpp"

namespace re100 {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double present_value_factor(double discount_rate, int periods) {
    if (periods < 1)
        throw ValidationError("present_value_factor: periods must be >= 1");
    if (discount_rate < 0.0)
        throw ValidationError("present_value_factor: discount rate must be >= 0");
    if (discount_rate == 0.0) return static_cast<double>(periods);
    double growth = std::pow(1.0 + discount_rate, periods);
    return (growth - 1.0) / (discount_rate * growth);
}

double single_lcoe(const Financials& fin) {
    if (!(fin.capacity_factor > 0.0 && fin.capacity_factor <= 1.0))
        throw ValidationError("single_lcoe: capacity factor must be in (0, 1]");
    if (!(fin.hours_per_period > 0.0))
        throw ValidationError("single_lcoe: hours per period must be positive");
    double annualized = fin.capital_cost / present_value_factor(fin.discount_rate, fin.lifetime) +
                        fin.fixed_om;
    return annualized / (fin.capacity_factor * fin.hours_per_period) + fin.variable_cost;
}

double module_lcoe(const std::vector<double>& lcoes, const std::vector<double>& shares) {
    if (lcoes.size() != shares.size())
        throw ValidationError("module_lcoe: size mismatch");
    double share_sum = 0.0, total = 0.0;
    for (std::size_t k = 0; k < lcoes.size(); ++k) {
        if (shares[k] < 0.0)
            throw ValidationError("module_lcoe: negative share");
        share_sum += shares[k];
        total += shares[k] * lcoes[k];
    }
    if (std::abs(share_sum - 1.0) > 1e-9)
        throw ValidationError("module_lcoe: shares sum to " + std::to_string(share_sum) +
                              ", expected 1");
    return total;
}

double total_lcoe(double c_g, double c_s, double x_g, double x_s) {
    if (x_g < 0.0 || x_s < 0.0)
        throw ValidationError("total_lcoe: capacities must be non-negative");
    return c_g * x_g + c_s * x_s;
}

double total_lcoe(const TechCosts& costs, double x_g, double x_s) {
    return total_lcoe(costs.c_g, costs.c_s, x_g, x_s);
}

CostFunction::CostFunction(const ProductionFunction& pf) : source_(pf) {
    // Vertex k sits between the segment binding below it (slope a_k) and the
    // one binding above (slope a_{k+1}); it is optimal exactly for
    // rho = c_g/c_s in [a_{k+1}, a_k]. The first vertex extends to rho = inf
    // (the x_g >= 1 wall), the last down to rho = 0.
    const auto& vertices = pf.vertices();
    const auto& segments = pf.segments();
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        CostRegion region;
        region.vertex = vertices[k];
        region.rho_hi = (k == 0) ? kInf : segments[k - 1].slope;
        region.rho_lo = (k == vertices.size() - 1) ? 0.0 : segments[k].slope;
        regions_.push_back(region);
    }
}

CostFunction legendre(const ProductionFunction& pf) { return CostFunction(pf); }

OptimalCapacity optimal_capacity(const CostFunction& cf, double c_g, double c_s) {
    if (!(c_g > 0.0) || !(c_s > 0.0))
        throw ValidationError("optimal_capacity: costs must be positive");
    double rho = c_g / c_s;
    const auto& regions = cf.regions();
    // Regions are ordered by descending rho (ascending x_g); boundary ratios
    // resolve to the smaller-x_g vertex, i.e. the first matching region.
    for (std::size_t k = 0; k < regions.size(); ++k) {
        if (rho >= regions[k].rho_lo || k == regions.size() - 1) {
            OptimalCapacity out;
            out.vertex = regions[k].vertex;
            out.lcoe = total_lcoe(c_g, c_s, out.vertex.x_g, out.vertex.x_s);
            out.region = static_cast<int>(k);
            return out;
        }
    }
    throw ValidationError("optimal_capacity: empty cost function");
}

Contour contour(const CostFunction& cf, double lcoe_target) {
    if (!(lcoe_target > 0.0))
        throw ValidationError("contour: target must be positive");
    Contour out;
    out.lcoe = lcoe_target;
    const auto& regions = cf.regions();

    // Within the region of vertex (xg, xs) the contour is the line
    // c_g xg + c_s xs = L clipped to the region's rho range; region borders
    // share endpoints because adjacent vertices have equal cost there.
    // First endpoint: rho = inf, i.e. c_s = 0.
    out.points.emplace_back(lcoe_target / regions.front().vertex.x_g, 0.0);
    for (std::size_t k = 0; k < regions.size(); ++k) {
        const auto& region = regions[k];
        if (region.rho_lo <= 0.0) {
            // Terminal region. A vertex with x_s = 0 makes the contour a
            // vertical ray c_g = L / x_g; otherwise the segment closes on the
            // c_g = 0 axis at c_s = L / x_s.
            if (region.vertex.x_s <= 0.0)
                out.vertical_ray = true;
            else
                out.points.emplace_back(0.0, lcoe_target / region.vertex.x_s);
            break;
        }
        double c_s = lcoe_target /
                     (region.rho_lo * region.vertex.x_g + region.vertex.x_s);
        out.points.emplace_back(region.rho_lo * c_s, c_s);
    }
    return out;
}

}  // namespace re100
