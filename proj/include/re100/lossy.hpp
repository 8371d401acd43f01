#pragma once

#include <vector>

#include "re100/envelope.hpp"
#include "re100/profile.hpp"

namespace re100 {

// Smallest x_g for which a lossy storage cycle can balance: the charge-scaled
// annual surplus must cover the discharge-scaled annual deficit. Found by
// bisection to 1e-10; equals 1 when e_c = e_d = 1.
double min_generation_lossy(const Profile& demand, const Profile& generation,
                            double charge_eff, double discharge_factor);

// Required storage energy capacity at x_g with charge efficiency e_c <= 1 and
// discharge factor e_d >= 1: the maximum over circular intervals of
// sum_t -(e_c * max(r_t, 0) + e_d * min(r_t, 0)) with r_t = x_g g_t - d_t,
// floored at 0. Reduces to the lossless production function when
// e_c = e_d = 1. Throws InfeasibleError (carrying min_generation_lossy) when
// x_g is below the cycle-balance bound.
double storage_requirement_lossy(const Profile& demand, const Profile& generation,
                                 double x_g, double charge_eff, double discharge_factor);

// Same with hourly charging capped at x_p (surplus beyond the cap is lost to
// the bottleneck) and discharging capped at x_p. Throws InfeasibleError when
// no finite energy capacity suffices under the cap.
double storage_requirement_power_capped(const Profile& demand, const Profile& generation,
                                        double x_g, double power_cap, double charge_eff,
                                        double discharge_factor);

// Pointwise-exact piecewise-linear sample of the lossy requirement over an
// x_g grid (the lossy boundary has no closed global piecewise form).
std::vector<CapacityPoint> lossy_sweep(const Profile& demand, const Profile& generation,
                                       double charge_eff, double discharge_factor,
                                       double xg_lo, double xg_hi, int samples);

}  // namespace re100
