#include "re100/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>

#include "re100/errors.hpp"

namespace re100 {
namespace oracle {

namespace {
constexpr int kMaxSteps = 2000;

void check_pair(const Profile& demand, const Profile& generation) {
    if (demand.steps() != generation.steps())
        throw ValidationError("oracle: profile lengths differ");
}
}  // namespace

double enumerate_intervals(const Profile& demand, const Profile& generation, double x_g) {
    check_pair(demand, generation);
    const int steps = demand.steps();
    if (steps > kMaxSteps)
        throw ResourceError("enumerate_intervals: T = " + std::to_string(steps) +
                            " exceeds the O(T^2) cap " + std::to_string(kMaxSteps));
    const auto& d = demand.values();
    const auto& g = generation.values();
    double best = 0.0;
    for (int i = 0; i < steps; ++i) {
        double gen_sum = 0.0, dem_sum = 0.0;
        for (int len = 1; len <= steps; ++len) {
            int t = (i + len - 1) % steps;
            gen_sum += g[static_cast<std::size_t>(t)];
            dem_sum += d[static_cast<std::size_t>(t)];
            best = std::max(best, dem_sum - x_g * gen_sum);
        }
    }
    return best;
}

bool greedy_simulate(const Profile& demand, const Profile& generation, double x_g,
                     double capacity, double charge_eff, double discharge_factor) {
    check_pair(demand, generation);
    if (capacity < 0.0)
        throw ValidationError("greedy_simulate: capacity must be >= 0");
    const int steps = demand.steps();
    const auto& d = demand.values();
    const auto& g = generation.values();
    double soc = capacity;
    for (int k = 0; k < 2 * steps; ++k) {
        int t = k % steps;
        double r = x_g * g[static_cast<std::size_t>(t)] - d[static_cast<std::size_t>(t)];
        if (r >= 0.0)
            soc = std::min(soc + charge_eff * r, capacity);
        else
            soc += discharge_factor * r;
        if (soc < -1e-9) return false;
    }
    return true;
}

double min_feasible_capacity(const Profile& demand, const Profile& generation, double x_g,
                             double charge_eff, double discharge_factor, double tol) {
    double lo = 0.0;
    double hi = discharge_factor;  // a full cycle of demand, discharge-scaled
    if (greedy_simulate(demand, generation, x_g, lo, charge_eff, discharge_factor)) return 0.0;
    while (!greedy_simulate(demand, generation, x_g, hi, charge_eff, discharge_factor)) {
        hi *= 2.0;
        if (hi > 1e6)
            throw ValidationError("min_feasible_capacity: no feasible capacity found");
    }
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (greedy_simulate(demand, generation, x_g, mid, charge_eff, discharge_factor))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

VertexScan vertex_scan(const ProductionFunction& pf, double c_g, double c_s) {
    if (!(c_g > 0.0) || !(c_s > 0.0))
        throw ValidationError("vertex_scan: costs must be positive");
    VertexScan best;
    bool first = true;
    for (const auto& v : pf.vertices()) {
        double lcoe = c_g * v.x_g + c_s * v.x_s;
        if (first || lcoe < best.lcoe ||
            (lcoe == best.lcoe && v.x_g < best.vertex.x_g)) {
            best.vertex = v;
            best.lcoe = lcoe;
            first = false;
        }
    }
    return best;
}

std::string fingerprint(const Profile& demand, const Profile& generation, double parameter) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    auto eat = [&hash](double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        for (int b = 0; b < 8; ++b) {
            hash ^= (bits >> (8 * b)) & 0xffU;
            hash *= 0x100000001b3ULL;
        }
    };
    for (double v : demand.values()) eat(v);
    for (double v : generation.values()) eat(v);
    eat(parameter);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

OracleReport report_enumerate(const Profile& demand, const Profile& generation, double x_g) {
    return {"storage requirement x_s(x_g=" + std::to_string(x_g) + ")", "interval-enumeration",
            enumerate_intervals(demand, generation, x_g), fingerprint(demand, generation, x_g)};
}

OracleReport report_greedy(const Profile& demand, const Profile& generation, double x_g,
                           double capacity, double charge_eff, double discharge_factor) {
    bool ok = greedy_simulate(demand, generation, x_g, capacity, charge_eff, discharge_factor);
    return {"feasibility at capacity " + std::to_string(capacity), "greedy-simulation",
            ok ? 1.0 : 0.0, fingerprint(demand, generation, x_g)};
}

OracleReport report_min_capacity(const Profile& demand, const Profile& generation, double x_g,
                                 double charge_eff, double discharge_factor) {
    return {"minimal feasible capacity at x_g=" + std::to_string(x_g), "bisection",
            min_feasible_capacity(demand, generation, x_g, charge_eff, discharge_factor),
            fingerprint(demand, generation, x_g)};
}

OracleReport report_vertex_scan(const ProductionFunction& pf, double c_g, double c_s) {
    auto scan = vertex_scan(pf, c_g, c_s);
    OracleReport report;
    report.quantity = "minimal total LCOE at (c_g, c_s) = (" + std::to_string(c_g) + ", " +
                      std::to_string(c_s) + ")";
    report.method = "vertex-scan";
    report.value = scan.lcoe;
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(hash ^ pf.vertices().size()));
    report.fingerprint = buf;
    return report;
}

}  // namespace oracle
}  // namespace re100
