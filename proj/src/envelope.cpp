#include "re100/envelope.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "re100/errors.hpp"

namespace re100 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct HullPoint {
    double gen_sum;  // G
    double dem_sum;  // D
    int start;       // 0-based
    int len;         // steps
};

// Deterministic representative among intervals with identical (G, D):
// greater length, then smaller start.
bool tie_preferred(const HullPoint& a, const HullPoint& b) {
    if (a.len != b.len) return a.len > b.len;
    return a.start < b.start;
}

// Orientation of (a, b, p): negative when b lies strictly above the chord
// a->p (right turn while walking the upper hull left to right).
int orientation(const HullPoint& a, const HullPoint& b, const HullPoint& p,
                bool exact) {
    const double abg = b.gen_sum - a.gen_sum;
    const double abd = b.dem_sum - a.dem_sum;
    const double apg = p.gen_sum - a.gen_sum;
    const double apd = p.dem_sum - a.dem_sum;
    if (exact) {
#if defined(__SIZEOF_FLOAT128__)
        __float128 cross = static_cast<__float128>(abg) * apd -
                           static_cast<__float128>(abd) * apg;
#else
        long double cross = static_cast<long double>(abg) * apd -
                            static_cast<long double>(abd) * apg;
#endif
        return cross > 0 ? 1 : (cross < 0 ? -1 : 0);
    }
    const double t1 = abg * apd;
    const double t2 = abd * apg;
    const double cross = t1 - t2;
    const double scale = std::max(std::abs(t1), std::abs(t2));
    if (std::abs(cross) <= 1e-12 * scale) return 0;
    return cross > 0 ? 1 : -1;
}

// Appends p to an upper-hull chain whose points arrive with non-decreasing G
// (and non-decreasing D at equal G).
void chain_push(std::vector<HullPoint>& chain, const HullPoint& p, bool exact) {
    while (!chain.empty() && chain.back().gen_sum == p.gen_sum) {
        if (p.dem_sum > chain.back().dem_sum) {
            chain.pop_back();
            continue;
        }
        if (p.dem_sum == chain.back().dem_sum && tie_preferred(p, chain.back())) {
            chain.pop_back();
            continue;
        }
        return;  // dominated or duplicate
    }
    while (chain.size() >= 2 &&
           orientation(chain[chain.size() - 2], chain.back(), p, exact) >= 0) {
        chain.pop_back();
    }
    chain.push_back(p);
}

// Prefix sums over two concatenated periods with compensated accumulation,
// clamped to be non-decreasing so interval sums stay non-negative.
std::vector<double> doubled_prefix(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<double> prefix(2 * n + 1);
    prefix[0] = 0.0;
    double sum = 0.0, comp = 0.0;
    for (std::size_t k = 0; k < 2 * n; ++k) {
        double y = values[k % n] - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        prefix[k + 1] = std::max(sum + comp, prefix[k]);
    }
    return prefix;
}

Interval make_interval(int start, int len, int steps) {
    return Interval{start + 1, (start + len - 1) % steps + 1};
}

PartialSumPoint to_point(const HullPoint& p, int steps) {
    return PartialSumPoint{make_interval(p.start, p.len, steps), p.gen_sum, p.dem_sum};
}

// Upper hulls are closed under unions of hulls, so chunk results can be
// merged in any grouping: sort canonically, drop duplicates, re-run the chain.
std::vector<HullPoint> merge_hulls(std::vector<HullPoint> points, bool exact) {
    std::sort(points.begin(), points.end(), [](const HullPoint& a, const HullPoint& b) {
        if (a.gen_sum != b.gen_sum) return a.gen_sum < b.gen_sum;
        if (a.dem_sum != b.dem_sum) return a.dem_sum < b.dem_sum;
        return tie_preferred(a, b);
    });
    std::vector<HullPoint> chain;
    chain.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i > 0 && points[i].gen_sum == points[i - 1].gen_sum &&
            points[i].dem_sum == points[i - 1].dem_sum)
            continue;  // preferred representative sorts first
        chain_push(chain, points[i], exact);
    }
    return chain;
}

}  // namespace

int interval_steps(const Interval& iv, int total_steps) {
    return (iv.end - iv.start + total_steps) % total_steps + 1;
}

ProductionFunction::ProductionFunction(std::vector<Segment> segments,
                                       std::vector<CapacityPoint> vertices,
                                       PartialSumPoint binding_at_min,
                                       PartialSumPoint full_cycle,
                                       std::vector<PartialSumPoint> hull_boundary,
                                       int steps, double step_hours)
    : segments_(std::move(segments)), vertices_(std::move(vertices)),
      binding_at_min_(binding_at_min), full_cycle_(full_cycle),
      hull_boundary_(std::move(hull_boundary)), steps_(steps), step_hours_(step_hours) {
    if (segments_.empty()) throw ValidationError("production function needs >= 1 segment");
}

double ProductionFunction::eval(double x_g) const {
    if (x_g < xg_min() - 1e-12)
        throw DomainError("x_g = " + std::to_string(x_g) +
                          " below the feasibility bound x_g >= 1");
    double best = -kInf;
    for (const auto& seg : segments_)
        best = std::max(best, seg.intercept - seg.slope * x_g);
    return std::max(best, 0.0);
}

double ProductionFunction::xg_zero() const {
    const auto& v = vertices_.back();
    return v.x_s <= 0.0 ? v.x_g : kInf;
}

BottleneckReport ProductionFunction::bottleneck_at(double x_g) const {
    if (x_g < xg_min() - 1e-12)
        throw DomainError("x_g = " + std::to_string(x_g) +
                          " below the feasibility bound x_g >= 1");
    const double tol = 1e-12 * (1.0 + x_g);
    BottleneckReport report;
    report.x_g = x_g;

    if (x_g <= xg_min()) {
        // Exact ties at the domain edge resolve to the stored winner
        // (longer interval, then smaller start) — e.g. the full cycle when
        // demand equals generation everywhere.
        const auto& p = binding_at_min_;
        report.interval = p.interval;
        report.dem_sum = p.dem_sum;
        report.gen_sum = p.gen_sum;
        report.x_s = std::max(p.dem_sum - x_g * p.gen_sum, 0.0);
        report.length_hours = interval_steps(p.interval, steps_) * step_hours_;
        return report;
    }

    double best = -kInf;
    for (const auto& seg : segments_)
        best = std::max(best, seg.intercept - seg.slope * x_g);

    if (best < -tol) {
        // No interval constraint binds: no storage needed. Report the full
        // cycle by convention.
        report.interval = full_cycle_.interval;
        report.dem_sum = full_cycle_.dem_sum;
        report.gen_sum = full_cycle_.gen_sum;
        report.x_s = 0.0;
        report.length_hours = steps_ * step_hours_;
        report.degenerate = true;
        return report;
    }

    const Segment* winner = nullptr;
    for (const auto& seg : segments_) {
        double v = seg.intercept - seg.slope * x_g;
        if (v < best - tol) continue;
        if (winner == nullptr) {
            winner = &seg;
            continue;
        }
        int len_new = interval_steps(seg.interval, steps_);
        int len_old = interval_steps(winner->interval, steps_);
        if (len_new > len_old ||
            (len_new == len_old && seg.interval.start < winner->interval.start))
            winner = &seg;
    }
    report.interval = winner->interval;
    report.dem_sum = winner->intercept;
    report.gen_sum = winner->slope;
    report.x_s = std::max(best, 0.0);
    report.length_hours = interval_steps(winner->interval, steps_) * step_hours_;
    return report;
}

bool ProductionFunction::operator==(const ProductionFunction& other) const {
    auto seg_eq = [](const Segment& a, const Segment& b) {
        return a.slope == b.slope && a.intercept == b.intercept && a.xg_lo == b.xg_lo &&
               a.xg_hi == b.xg_hi && a.interval == b.interval;
    };
    if (segments_.size() != other.segments_.size()) return false;
    for (std::size_t i = 0; i < segments_.size(); ++i)
        if (!seg_eq(segments_[i], other.segments_[i])) return false;
    if (vertices_.size() != other.vertices_.size()) return false;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i].x_g != other.vertices_[i].x_g ||
            vertices_[i].x_s != other.vertices_[i].x_s)
            return false;
    if (hull_boundary_.size() != other.hull_boundary_.size()) return false;
    for (std::size_t i = 0; i < hull_boundary_.size(); ++i) {
        const auto& a = hull_boundary_[i];
        const auto& b = other.hull_boundary_[i];
        if (a.gen_sum != b.gen_sum || a.dem_sum != b.dem_sum || !(a.interval == b.interval))
            return false;
    }
    return steps_ == other.steps_ &&
           binding_at_min_.interval == other.binding_at_min_.interval;
}

ProductionFunction partial_sum_hull(const Profile& demand, const Profile& generation,
                                    const HullOptions& options) {
    const int steps = demand.steps();
    if (generation.steps() != steps)
        throw ValidationError("partial_sum_hull: profile lengths differ (" +
                              std::to_string(steps) + " vs " +
                              std::to_string(generation.steps()) + ")");
    if (steps > options.max_steps)
        throw ResourceError("partial_sum_hull: T = " + std::to_string(steps) +
                            " exceeds the capacity bound " +
                            std::to_string(options.max_steps));
    const bool exact = options.exact_orientation;
    const auto prefix_d = doubled_prefix(demand.values());
    const auto prefix_g = doubled_prefix(generation.values());

    const int chunk_starts = std::max(options.chunk_starts, 1);
    const int n_chunks = (steps + chunk_starts - 1) / chunk_starts;

    // One chunk = a block of interval starts. Every circular interval of
    // length 1..T-1 appears exactly once; the full cycle is added once at the
    // end (all T rotations of it are the same set of hours).
    auto process_chunk = [&](int chunk) {
        std::vector<HullPoint> points;
        std::vector<HullPoint> chain;
        chain.reserve(static_cast<std::size_t>(steps));
        const int s_begin = chunk * chunk_starts;
        const int s_end = std::min(s_begin + chunk_starts, steps);
        for (int s = s_begin; s < s_end; ++s) {
            chain.clear();
            const double g0 = prefix_g[static_cast<std::size_t>(s)];
            const double d0 = prefix_d[static_cast<std::size_t>(s)];
            const double* pg = prefix_g.data() + s;
            const double* pd = prefix_d.data() + s;
            for (int len = 1; len < steps; ++len) {
                // G grows with the interval, so the stream is already sorted.
                chain_push(chain, HullPoint{pg[len] - g0, pd[len] - d0, s, len}, exact);
            }
            points.insert(points.end(), chain.begin(), chain.end());
        }
        return merge_hulls(std::move(points), exact);
    };

    std::vector<std::vector<HullPoint>> chunk_hulls(static_cast<std::size_t>(n_chunks));
    int threads = options.threads > 0
                      ? options.threads
                      : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, std::min(n_chunks, 16));
    if (threads <= 1) {
        for (int c = 0; c < n_chunks; ++c)
            chunk_hulls[static_cast<std::size_t>(c)] = process_chunk(c);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&]() {
                for (int c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1))
                    chunk_hulls[static_cast<std::size_t>(c)] = process_chunk(c);
            });
        }
        for (auto& th : pool) th.join();
    }

    std::vector<HullPoint> all;
    for (const auto& h : chunk_hulls) all.insert(all.end(), h.begin(), h.end());
    const HullPoint full_cycle{prefix_g[static_cast<std::size_t>(steps)],
                               prefix_d[static_cast<std::size_t>(steps)], 0, steps};
    all.push_back(full_cycle);
    std::vector<HullPoint> hull = merge_hulls(std::move(all), exact);

    // Keep the faces that can bind on x_g >= 1: walking in from the max-G
    // end, drop points whose incoming edge slope is below 1 (they bind only
    // at x_g < 1). An edge slope of exactly 1 ties at x_g = 1; remember the
    // dropped point so bottleneck reports at the domain edge can apply the
    // interval tie rule.
    std::size_t m = hull.size();
    bool has_tie = false;
    HullPoint tie_point{};
    while (m >= 2) {
        double dg = hull[m - 1].gen_sum - hull[m - 2].gen_sum;
        double dd = hull[m - 1].dem_sum - hull[m - 2].dem_sum;
        double tol = 1e-12 * std::max(dd, dg);
        if (dd < dg - tol) {
            --m;
            continue;
        }
        if (dd <= dg + tol) {
            has_tie = true;
            tie_point = hull[m - 1];
            --m;
            continue;
        }
        break;
    }

    auto edge_slope = [&](std::size_t left, std::size_t right) {
        return (hull[right].dem_sum - hull[left].dem_sum) /
               (hull[right].gen_sum - hull[left].gen_sum);
    };

    std::vector<Segment> segments;
    for (std::size_t k = m; k-- > 0;) {
        Segment seg;
        seg.slope = hull[k].gen_sum;
        seg.intercept = hull[k].dem_sum;
        seg.interval = make_interval(hull[k].start, hull[k].len, steps);
        seg.xg_lo = (k == m - 1) ? 1.0 : edge_slope(k, k + 1);
        seg.xg_hi = (k == 0) ? kInf : edge_slope(k - 1, k);
        segments.push_back(seg);
    }

    // Segments past the zero crossing of x_s never bind (the floor at 0
    // dominates); the crossing segment becomes the last one.
    std::vector<Segment> kept;
    for (const auto& seg : segments) {
        double v_lo = seg.intercept - seg.slope * seg.xg_lo;
        if (!kept.empty() && v_lo <= 0.0) break;
        kept.push_back(seg);
        if (seg.slope > 0.0 && seg.intercept / seg.slope <= seg.xg_hi) break;
    }
    kept.back().xg_hi = kInf;

    std::vector<CapacityPoint> vertices;
    vertices.push_back({1.0, std::max(kept.front().intercept - kept.front().slope, 0.0)});
    for (std::size_t k = 1; k < kept.size(); ++k) {
        double x = kept[k].xg_lo;
        vertices.push_back({x, std::max(kept[k].intercept - kept[k].slope * x, 0.0)});
    }
    const Segment& last = kept.back();
    if (last.slope > 0.0) {
        double x0 = last.intercept / last.slope;
        if (x0 > vertices.back().x_g) vertices.push_back({x0, 0.0});
    }

    HullPoint binding = hull[m - 1];
    if (has_tie && tie_preferred(tie_point, binding)) binding = tie_point;

    std::vector<PartialSumPoint> boundary;
    boundary.reserve(hull.size());
    for (const auto& p : hull) boundary.push_back(to_point(p, steps));

    return ProductionFunction(std::move(kept), std::move(vertices),
                              to_point(binding, steps), to_point(full_cycle, steps),
                              std::move(boundary), steps, demand.step_hours());
}

}  // namespace re100
