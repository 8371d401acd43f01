#pragma once

#include <vector>

#include "re100/profile.hpp"

namespace re100 {

// Circular interval of steps, 1-based inclusive. end < start wraps around.
struct Interval {
    int start = 1;
    int end = 1;

    bool operator==(const Interval&) const = default;
};

int interval_steps(const Interval& iv, int total_steps);

// One point of the (G, D) coefficient plane: the partial sums of the unit
// generation and demand profiles over a circular interval.
struct PartialSumPoint {
    Interval interval;
    double gen_sum = 0.0;  // G
    double dem_sum = 0.0;  // D
};

// One linear piece of the production function: x_s = intercept - slope * x_g,
// binding on [xg_lo, xg_hi]. slope and intercept are the (G, D) sums of the
// binding interval.
struct Segment {
    double slope = 0.0;
    double intercept = 0.0;
    double xg_lo = 1.0;
    double xg_hi = 0.0;  // +inf for the last segment
    Interval interval;
};

struct CapacityPoint {
    double x_g = 0.0;
    double x_s = 0.0;
};

// The binding interval behind the storage requirement at one x_g.
struct BottleneckReport {
    double x_g = 0.0;
    Interval interval;
    double dem_sum = 0.0;  // D*
    double gen_sum = 0.0;  // G*
    double x_s = 0.0;
    double length_hours = 0.0;
    // True when no interval constraint is active (x_s = 0 with slack); the
    // report then carries the full cycle by convention.
    bool degenerate = false;
};

struct HullOptions {
    int chunk_starts = 256;      // interval starts per work chunk
    int threads = 0;             // 0 = hardware concurrency (capped)
    bool exact_orientation = false;  // exact-sign orientation for adversarial inputs
    int max_steps = 20000;       // beyond this the O(T^2) scan is refused
};

// The exact generation-vs-storage boundary x_s(x_g): upper envelope of all
// T^2 interval constraints x_s >= D_ij - x_g * G_ij on x_g >= 1, clamped at 0.
class ProductionFunction {
public:
    ProductionFunction(std::vector<Segment> segments, std::vector<CapacityPoint> vertices,
                       PartialSumPoint binding_at_min, PartialSumPoint full_cycle,
                       std::vector<PartialSumPoint> hull_boundary, int steps,
                       double step_hours);

    // max over segments of (intercept - slope * x_g), clamped at 0.
    // Throws DomainError below xg_min().
    double eval(double x_g) const;

    BottleneckReport bottleneck_at(double x_g) const;

    const std::vector<Segment>& segments() const { return segments_; }
    const std::vector<CapacityPoint>& vertices() const { return vertices_; }
    double xg_min() const { return 1.0; }
    // x_g where x_s first reaches 0, or +inf when it never does.
    double xg_zero() const;
    const PartialSumPoint& binding_at_min() const { return binding_at_min_; }
    const PartialSumPoint& full_cycle() const { return full_cycle_; }
    // Full upper hull of the (G, D) point cloud, G ascending (for G-D plots;
    // includes faces that bind only below x_g = 1).
    const std::vector<PartialSumPoint>& hull_boundary() const { return hull_boundary_; }
    int steps() const { return steps_; }
    double step_hours() const { return step_hours_; }

    bool operator==(const ProductionFunction&) const;

private:
    std::vector<Segment> segments_;
    std::vector<CapacityPoint> vertices_;
    PartialSumPoint binding_at_min_;
    PartialSumPoint full_cycle_;
    std::vector<PartialSumPoint> hull_boundary_;
    int steps_;
    double step_hours_;
};

// Builds the production function from the convex hull of all T^2 interval
// partial-sum points, streamed from compensated prefix sums in chunks of
// starts, each reduced to a local upper hull and merged. Deterministic:
// identical inputs give bit-identical results regardless of chunking or
// worker count.
ProductionFunction partial_sum_hull(const Profile& demand, const Profile& generation,
                                    const HullOptions& options = {});

}  // namespace re100
