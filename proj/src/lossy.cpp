#include "re100/lossy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "re100/errors.hpp"

namespace re100 {

namespace {

void check_efficiencies(double e_c, double e_d) {
    if (!(e_c > 0.0 && e_c <= 1.0))
        throw ValidationError("charge efficiency must be in (0, 1], got " +
                              std::to_string(e_c));
    if (!(e_d >= 1.0))
        throw ValidationError("discharge factor must be >= 1, got " + std::to_string(e_d));
}

void check_pair(const Profile& demand, const Profile& generation) {
    if (demand.steps() != generation.steps())
        throw ValidationError("profile lengths differ");
}

// Net storage drain per step given the per-step chargeable surplus cap.
std::vector<double> drain_weights(const Profile& demand, const Profile& generation,
                                  double x_g, double e_c, double e_d, double charge_cap) {
    const auto& d = demand.values();
    const auto& g = generation.values();
    std::vector<double> w(d.size());
    for (std::size_t t = 0; t < d.size(); ++t) {
        double r = x_g * g[t] - d[t];
        double charge = std::min(std::max(r, 0.0), charge_cap);
        double discharge = std::min(r, 0.0);
        w[t] = -(e_c * charge + e_d * discharge);
    }
    return w;
}

// Maximum sum over a non-empty contiguous subarray.
double max_subarray(const std::vector<double>& w) {
    double best = -std::numeric_limits<double>::infinity();
    double cur = 0.0;
    for (double v : w) {
        cur = std::max(v, cur + v);
        best = std::max(best, cur);
    }
    return best;
}

double min_subarray(const std::vector<double>& w) {
    double best = std::numeric_limits<double>::infinity();
    double cur = 0.0;
    for (double v : w) {
        cur = std::min(v, cur + v);
        best = std::min(best, cur);
    }
    return best;
}

// Maximum sum over a non-empty circular interval of length <= T.
double max_circular_interval(const std::vector<double>& w) {
    double best = max_subarray(w);
    double total = 0.0;
    for (double v : w) total += v;
    // A wrapped interval is the complement of a proper interior subarray.
    if (w.size() >= 2) {
        double interior = std::min(
            min_subarray(std::vector<double>(w.begin() + 1, w.end())),
            min_subarray(std::vector<double>(w.begin(), w.end() - 1)));
        best = std::max(best, total - interior);
    }
    return best;
}

double cycle_balance(const Profile& demand, const Profile& generation, double x_g,
                     double e_c, double e_d, double charge_cap) {
    const auto& d = demand.values();
    const auto& g = generation.values();
    double balance = 0.0;
    for (std::size_t t = 0; t < d.size(); ++t) {
        double r = x_g * g[t] - d[t];
        balance += e_c * std::min(std::max(r, 0.0), charge_cap) + e_d * std::min(r, 0.0);
    }
    return balance;
}

constexpr double kUncapped = std::numeric_limits<double>::infinity();

}  // namespace

double min_generation_lossy(const Profile& demand, const Profile& generation,
                            double charge_eff, double discharge_factor) {
    check_efficiencies(charge_eff, discharge_factor);
    check_pair(demand, generation);

    auto balance = [&](double x_g) {
        return cycle_balance(demand, generation, x_g, charge_eff, discharge_factor,
                             kUncapped);
    };
    double lo = 0.0;
    double hi = 1.0;
    while (balance(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e9)
            throw ValidationError("min_generation_lossy: no finite bound found");
    }
    while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi);
        if (balance(mid) >= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

double storage_requirement_lossy(const Profile& demand, const Profile& generation,
                                 double x_g, double charge_eff, double discharge_factor) {
    check_efficiencies(charge_eff, discharge_factor);
    check_pair(demand, generation);
    if (cycle_balance(demand, generation, x_g, charge_eff, discharge_factor, kUncapped) <
        -1e-12) {
        double bound = min_generation_lossy(demand, generation, charge_eff, discharge_factor);
        throw InfeasibleError("x_g = " + std::to_string(x_g) +
                                  " below the lossy feasibility bound " + std::to_string(bound),
                              bound);
    }
    auto w = drain_weights(demand, generation, x_g, charge_eff, discharge_factor, kUncapped);
    return std::max(max_circular_interval(w), 0.0);
}

double storage_requirement_power_capped(const Profile& demand, const Profile& generation,
                                        double x_g, double power_cap, double charge_eff,
                                        double discharge_factor) {
    check_efficiencies(charge_eff, discharge_factor);
    check_pair(demand, generation);
    if (!(power_cap > 0.0))
        throw ValidationError("power capacity must be positive");

    // A deficit hour that needs more than the discharge cap cannot be served
    // by any energy capacity.
    const auto& d = demand.values();
    const auto& g = generation.values();
    for (std::size_t t = 0; t < d.size(); ++t) {
        double r = x_g * g[t] - d[t];
        if (r < 0.0 && discharge_factor * (-r) > power_cap + 1e-12)
            throw InfeasibleError("deficit at step " + std::to_string(t + 1) +
                                  " exceeds the discharge power capacity");
    }
    if (cycle_balance(demand, generation, x_g, charge_eff, discharge_factor, power_cap) <
        -1e-12)
        throw InfeasibleError("capped charging cannot cover the cycle deficit at x_g = " +
                              std::to_string(x_g));

    auto w = drain_weights(demand, generation, x_g, charge_eff, discharge_factor, power_cap);
    return std::max(max_circular_interval(w), 0.0);
}

std::vector<CapacityPoint> lossy_sweep(const Profile& demand, const Profile& generation,
                                       double charge_eff, double discharge_factor,
                                       double xg_lo, double xg_hi, int samples) {
    if (samples < 2) throw ValidationError("lossy_sweep: needs >= 2 samples");
    if (!(xg_hi > xg_lo)) throw ValidationError("lossy_sweep: empty x_g range");
    double bound = min_generation_lossy(demand, generation, charge_eff, discharge_factor);
    if (xg_hi <= bound)
        throw InfeasibleError("lossy_sweep: the whole range lies below the feasibility "
                                  "bound " + std::to_string(bound),
                              bound);
    double lo = std::max(xg_lo, bound);
    std::vector<CapacityPoint> out;
    out.reserve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        double x = lo + (xg_hi - lo) * static_cast<double>(k) / (samples - 1);
        out.push_back({x, storage_requirement_lossy(demand, generation, x, charge_eff,
                                                    discharge_factor)});
    }
    return out;
}

}  // namespace re100
