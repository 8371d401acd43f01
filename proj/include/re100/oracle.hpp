#pragma once

#include <string>

#include "re100/envelope.hpp"
#include "re100/profile.hpp"

namespace re100 {
namespace oracle {

// Brute-force validators. These deliberately use the naive formulas with
// their own accumulation order and no shared machinery beyond Profile, so
// they stay independent of the code paths they certify.

struct OracleReport {
    std::string quantity;
    std::string method;
    double value = 0.0;
    std::string fingerprint;  // FNV-1a over the instance bytes
};

// max over all T^2 circular intervals of (D_ij - x_g * G_ij), floored at 0,
// by direct enumeration. T <= 2000 by design.
double enumerate_intervals(const Profile& demand, const Profile& generation, double x_g);

// Charge-on-surplus / discharge-on-deficit simulation over two concatenated
// cycles starting from full charge; true when demand was always met.
// Monotone in capacity.
bool greedy_simulate(const Profile& demand, const Profile& generation, double x_g,
                     double capacity, double charge_eff = 1.0, double discharge_factor = 1.0);

// Smallest capacity the greedy simulation accepts, by bisection to `tol`.
double min_feasible_capacity(const Profile& demand, const Profile& generation, double x_g,
                             double charge_eff = 1.0, double discharge_factor = 1.0,
                             double tol = 1e-7);

struct VertexScan {
    CapacityPoint vertex;
    double lcoe = 0.0;
};

// Exhaustive minimum of c_g x_g + c_s x_s over the production-function
// vertices; ties resolve to the smaller x_g.
VertexScan vertex_scan(const ProductionFunction& pf, double c_g, double c_s);

std::string fingerprint(const Profile& demand, const Profile& generation,
                        double parameter = 0.0);

OracleReport report_enumerate(const Profile& demand, const Profile& generation, double x_g);
OracleReport report_greedy(const Profile& demand, const Profile& generation, double x_g,
                           double capacity, double charge_eff = 1.0,
                           double discharge_factor = 1.0);
OracleReport report_min_capacity(const Profile& demand, const Profile& generation, double x_g,
                                 double charge_eff = 1.0, double discharge_factor = 1.0);
OracleReport report_vertex_scan(const ProductionFunction& pf, double c_g, double c_s);

}  // namespace oracle
}  // namespace re100
