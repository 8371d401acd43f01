#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "re100/envelope.hpp"
#include "re100/oracle.hpp"

using namespace re100;

namespace {

Profile uniform_demand(int steps) {
    return synth("uniform", steps, {}, 0, ProfileKind::demand, "d");
}

}  // namespace

TEST_SUITE("envelope") {

TEST_CASE("block generation gives a single flat segment") {
    auto d = uniform_demand(4);
    Profile g({0.5, 0.5, 0.0, 0.0}, ProfileKind::generation, "g");
    auto pf = partial_sum_hull(d, g);

    REQUIRE(pf.segments().size() == 1);
    CHECK(pf.segments()[0].slope == doctest::Approx(0.0));
    CHECK(pf.segments()[0].intercept == doctest::Approx(0.5));
    CHECK(pf.segments()[0].interval == Interval{3, 4});
    REQUIRE(pf.vertices().size() == 1);
    CHECK(pf.vertices()[0].x_g == doctest::Approx(1.0));
    CHECK(pf.vertices()[0].x_s == doctest::Approx(0.5));

    for (double x : {1.0, 1.7, 3.0, 10.0})
        CHECK(pf.eval(x) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("alternating generation gives one sloped segment") {
    auto d = uniform_demand(4);
    Profile g({0.1, 0.4, 0.1, 0.4}, ProfileKind::generation, "g");
    auto pf = partial_sum_hull(d, g);

    // Binding set: the single deficit hour (G, D) = (0.1, 0.25).
    REQUIRE(pf.segments().size() == 1);
    CHECK(pf.segments()[0].slope == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(pf.segments()[0].intercept == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(interval_steps(pf.segments()[0].interval, 4) == 1);

    REQUIRE(pf.vertices().size() == 2);
    CHECK(pf.vertices()[0].x_g == doctest::Approx(1.0));
    CHECK(pf.vertices()[0].x_s == doctest::Approx(0.15).epsilon(1e-12));
    CHECK(pf.vertices()[1].x_g == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(pf.vertices()[1].x_s == doctest::Approx(0.0));

    CHECK(pf.eval(1.0) == doctest::Approx(0.15).epsilon(1e-12));
    CHECK(pf.eval(2.5) == doctest::Approx(0.0));
    CHECK(pf.eval(3.0) == 0.0);
}

TEST_CASE("identical demand and generation needs no storage") {
    auto p = testing::random_demand(48, 3);
    Profile g(p.values(), ProfileKind::generation, "same");
    auto pf = partial_sum_hull(p, g);
    CHECK(pf.eval(1.0) == 0.0);
    CHECK(pf.eval(2.0) == 0.0);

    auto report = pf.bottleneck_at(1.0);
    CHECK(report.x_s == 0.0);
    CHECK(report.interval == Interval{1, 48});  // full cycle by convention
}

TEST_CASE("eval rejects the infeasible domain") {
    auto d = uniform_demand(4);
    Profile g({0.5, 0.5, 0.0, 0.0}, ProfileKind::generation, "g");
    auto pf = partial_sum_hull(d, g);
    CHECK_THROWS_AS(pf.eval(0.9), DomainError);
    CHECK_THROWS_AS(pf.bottleneck_at(0.5), DomainError);
}

TEST_CASE("bottleneck report for the block example") {
    auto d = uniform_demand(4);
    Profile g({0.5, 0.5, 0.0, 0.0}, ProfileKind::generation, "g");
    auto pf = partial_sum_hull(d, g);
    auto report = pf.bottleneck_at(1.5);
    CHECK(report.interval == Interval{3, 4});
    CHECK(report.dem_sum == doctest::Approx(0.5));
    CHECK(report.gen_sum == doctest::Approx(0.0));
    CHECK(report.x_s == doctest::Approx(0.5));
    CHECK(report.length_hours == doctest::Approx(2.0));
}

TEST_CASE("vertex ties report the longer interval") {
    // At x_g = 1 the single deficit hour ties with the three-hour window
    // holding it; the longer interval wins the report.
    auto d = uniform_demand(4);
    Profile g({0.1, 0.4, 0.1, 0.4}, ProfileKind::generation, "g");
    auto pf = partial_sum_hull(d, g);
    auto at_min = pf.bottleneck_at(1.0);
    CHECK(interval_steps(at_min.interval, 4) == 3);
    CHECK(at_min.x_s == doctest::Approx(0.15).epsilon(1e-12));
    // Just above the tie the deficit hour binds alone.
    auto above = pf.bottleneck_at(1.0 + 1e-9);
    CHECK(interval_steps(above.interval, 4) == 1);
}

TEST_CASE("hull equals the exhaustive interval enumeration") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        int steps = seed % 3 == 0 ? 300 : (seed % 3 == 1 ? 96 : 48);
        auto d = testing::random_demand(steps, seed);
        auto g = testing::random_generation(steps, seed + 100);
        auto pf = partial_sum_hull(d, g);
        for (double x : {1.0, 1.1, 1.37, 1.8, 2.5, 3.9}) {
            double expected = oracle::enumerate_intervals(d, g, x);
            CHECK(std::abs(pf.eval(x) - expected) <= 1e-12);
        }
    }
}

TEST_CASE("production function is convex, non-increasing, with ordered slopes") {
    for (std::uint64_t seed = 21; seed <= 30; ++seed) {
        auto d = testing::random_demand(72, seed);
        auto g = testing::random_generation(72, seed + 7);
        auto pf = partial_sum_hull(d, g);

        const auto& segs = pf.segments();
        for (std::size_t k = 1; k < segs.size(); ++k) {
            CHECK(segs[k - 1].slope > segs[k].slope);
            CHECK(segs[k].slope >= 0.0);
            // continuity at the shared boundary
            double x = segs[k].xg_lo;
            CHECK(std::abs((segs[k - 1].intercept - segs[k - 1].slope * x) -
                           (segs[k].intercept - segs[k].slope * x)) <= 1e-9);
        }
        testing::Rng rng(seed);
        for (int trial = 0; trial < 24; ++trial) {
            double a = rng.uniform(1.0, 4.0);
            double b = rng.uniform(1.0, 4.0);
            double mid = 0.5 * (a + b);
            CHECK(pf.eval(mid) <= 0.5 * (pf.eval(a) + pf.eval(b)) + 1e-12);
            CHECK(pf.eval(std::max(a, b)) <= pf.eval(std::min(a, b)) + 1e-12);
        }
    }
}

TEST_CASE("greedy simulation certifies the storage requirement") {
    for (std::uint64_t seed = 31; seed <= 40; ++seed) {
        auto d = testing::random_demand(60, seed);
        auto g = testing::random_generation(60, seed + 3);
        auto pf = partial_sum_hull(d, g);
        testing::Rng rng(seed);
        double x_g = rng.uniform(1.0, 3.0);
        double x_s = pf.eval(x_g);
        CHECK(oracle::greedy_simulate(d, g, x_g, x_s));
        if (x_s > 0.0) CHECK_FALSE(oracle::greedy_simulate(d, g, x_g, x_s - 1e-6));
    }
}

TEST_CASE("mixing generations never hurts the storage requirement") {
    for (std::uint64_t seed = 41; seed <= 52; ++seed) {
        auto d = testing::random_demand(48, seed);
        auto g1 = testing::random_generation(48, seed + 11);
        auto g2 = testing::random_generation(48, seed + 23);
        testing::Rng rng(seed);
        double beta = rng.uniform(0.0, 1.0);
        double x_g = rng.uniform(1.0, 2.5);
        auto mixed = mix({g1, g2}, {beta, 1.0 - beta});
        double xs_mixed = partial_sum_hull(d, mixed).eval(x_g);
        double xs_1 = partial_sum_hull(d, g1).eval(x_g);
        double xs_2 = partial_sum_hull(d, g2).eval(x_g);
        CHECK(xs_mixed <= beta * xs_1 + (1.0 - beta) * xs_2 + 1e-9);
    }
}

TEST_CASE("segment slope is the marginal substitution rate") {
    auto d = testing::random_demand(96, 55);
    auto g = testing::random_generation(96, 56);
    auto pf = partial_sum_hull(d, g);
    const double h = 1e-6;
    for (const auto& seg : pf.segments()) {
        if (pf.eval(seg.xg_lo) <= 0.0) continue;
        double hi = std::min(seg.xg_hi, seg.slope > 0 ? seg.intercept / seg.slope : seg.xg_lo + 1);
        double x = 0.5 * (seg.xg_lo + std::min(hi, seg.xg_lo + 1.0));
        if (pf.eval(x) <= 0.0) continue;
        double slope_fd = (pf.eval(x + h) - pf.eval(x - h)) / (2.0 * h);
        CHECK(slope_fd == doctest::Approx(-seg.slope).epsilon(1e-6));
        CHECK(pf.bottleneck_at(x).gen_sum == doctest::Approx(seg.slope));
    }
}

TEST_CASE("bottleneck reports satisfy the energy balance identity") {
    for (std::uint64_t seed = 61; seed <= 70; ++seed) {
        auto d = testing::random_demand(48, seed);
        auto g = testing::random_generation(48, seed + 9);
        auto pf = partial_sum_hull(d, g);
        testing::Rng rng(seed);
        for (int trial = 0; trial < 8; ++trial) {
            double x_g = rng.uniform(1.0, 3.0);
            auto report = pf.bottleneck_at(x_g);
            if (report.degenerate) {
                CHECK(report.x_s == 0.0);
                continue;
            }
            CHECK(std::abs(report.x_s - (report.dem_sum - x_g * report.gen_sum)) <= 1e-9);
        }
    }
}

TEST_CASE("chunking and worker count do not change the result") {
    auto d = testing::random_demand(211, 77);
    auto g = testing::random_generation(211, 78);
    HullOptions base;
    auto reference = partial_sum_hull(d, g, base);
    for (int chunk : {1, 7, 64, 211, 500}) {
        HullOptions opt;
        opt.chunk_starts = chunk;
        CHECK(partial_sum_hull(d, g, opt) == reference);
    }
    HullOptions threaded;
    threaded.chunk_starts = 16;
    threaded.threads = 4;
    CHECK(partial_sum_hull(d, g, threaded) == reference);
    HullOptions exact;
    exact.exact_orientation = true;
    CHECK(partial_sum_hull(d, g, exact) == reference);
}

TEST_CASE("capacity bound raises instead of truncating") {
    HullOptions opt;
    opt.max_steps = 100;
    auto d = testing::random_demand(128, 2);
    auto g = testing::random_generation(128, 3);
    CHECK_THROWS_AS(partial_sum_hull(d, g, opt), ResourceError);
}

TEST_CASE("coincident zero hours are handled") {
    // Hour 4 has neither demand nor generation: the (0, 0) interval point
    // exists but never outranks the deficit constraints.
    Profile d({0.3, 0.3, 0.2, 0.2, 0.0}, ProfileKind::demand, "d");
    Profile g({0.5, 0.3, 0.2, 0.0, 0.0}, ProfileKind::generation, "g");
    auto pf = partial_sum_hull(d, g);
    for (double x : {1.0, 1.5, 2.0, 3.0})
        CHECK(std::abs(pf.eval(x) - oracle::enumerate_intervals(d, g, x)) <= 1e-12);
}

TEST_CASE("two-step minimal profiles work end to end") {
    Profile d({0.5, 0.5}, ProfileKind::demand, "d");
    Profile g({1.0, 0.0}, ProfileKind::generation, "g");
    auto pf = partial_sum_hull(d, g);
    // deficit hour (G, D) = (0, 0.5): flat requirement
    CHECK(pf.eval(1.0) == doctest::Approx(0.5));
    CHECK(pf.eval(5.0) == doctest::Approx(0.5));
    CHECK(pf.bottleneck_at(2.0).interval == Interval{2, 2});
    CHECK(oracle::enumerate_intervals(d, g, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("the terminal vertex reports its own interval, beyond it the cycle") {
    auto d = synth("uniform", 4, {}, 0, ProfileKind::demand, "d");
    Profile g({0.1, 0.4, 0.1, 0.4}, ProfileKind::generation, "g");
    auto pf = partial_sum_hull(d, g);
    auto at_zero = pf.bottleneck_at(2.5);  // x_s reaches 0 exactly here
    CHECK(at_zero.x_s == doctest::Approx(0.0));
    CHECK_FALSE(at_zero.degenerate);
    CHECK(interval_steps(at_zero.interval, 4) == 1);
    auto beyond = pf.bottleneck_at(3.0);
    CHECK(beyond.degenerate);
    CHECK(beyond.interval == Interval{1, 4});
    CHECK(beyond.x_s == 0.0);
}

TEST_CASE("adversarial shapes still match the oracle") {
    const int steps = 200;
    // monotone ramp: per-start hulls are as dense as they get
    std::vector<double> ramp(steps);
    for (int t = 0; t < steps; ++t) ramp[static_cast<std::size_t>(t)] = t + 1.0;
    auto ramp_gen = normalize(ramp, ProfileKind::generation, "ramp");
    // spike: one hour carries almost all generation
    std::vector<double> spike(steps, 1e-4);
    spike[17] = 1.0;
    auto spike_gen = normalize(spike, ProfileKind::generation, "spike");
    auto d = testing::random_demand(steps, 1234);

    for (const auto& g : {ramp_gen, spike_gen}) {
        auto pf = partial_sum_hull(d, g);
        for (double x : {1.0, 1.2, 1.9, 3.3})
            CHECK(std::abs(pf.eval(x) - oracle::enumerate_intervals(d, g, x)) <= 1e-11);
        HullOptions exact;
        exact.exact_orientation = true;
        CHECK(partial_sum_hull(d, g, exact) == pf);
    }
}

TEST_CASE("partial sums stay in the normalized range") {
    auto d = testing::random_demand(128, 91);
    auto g = testing::random_generation(128, 92);
    auto pf = partial_sum_hull(d, g);
    for (const auto& p : pf.hull_boundary()) {
        CHECK(p.gen_sum >= 0.0);
        CHECK(p.gen_sum <= 1.0 + 1e-9);
        CHECK(p.dem_sum >= 0.0);
        CHECK(p.dem_sum <= 1.0 + 1e-9);
    }
}

}  // TEST_SUITE
