#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "re100/envelope.hpp"
#include "re100/lossy.hpp"

using namespace re100;

TEST_SUITE("lossy") {

TEST_CASE("lossless efficiencies reduce to the production function") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        auto d = testing::random_demand(48, seed);
        auto g = testing::random_generation(48, seed + 5);
        auto pf = partial_sum_hull(d, g);
        for (double x : {1.0, 1.3, 2.0, 3.1}) {
            CHECK(std::abs(storage_requirement_lossy(d, g, x, 1.0, 1.0) - pf.eval(x)) <= 1e-9);
        }
    }
}

TEST_CASE("binding feasibility: the worked two-step instance") {
    Profile d({0.5, 0.5}, ProfileKind::demand, "d");
    Profile g({1.0, 0.0}, ProfileKind::generation, "g");

    // 0.8 * (x_g - 0.5) = 0.5  =>  x_g = 1.125
    CHECK(min_generation_lossy(d, g, 0.8, 1.0) == doctest::Approx(1.125).epsilon(1e-9));
    // At the bound the deficit hour is fully storage-served.
    CHECK(storage_requirement_lossy(d, g, 1.125, 0.8, 1.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(storage_requirement_lossy(d, g, 1.1, 0.8, 1.0), InfeasibleError);
    try {
        storage_requirement_lossy(d, g, 1.1, 0.8, 1.0);
    } catch (const InfeasibleError& e) {
        CHECK(e.min_generation() == doctest::Approx(1.125).epsilon(1e-8));
    }
}

TEST_CASE("lossless minimum generation is 1") {
    auto d = testing::random_demand(36, 7);
    auto g = testing::random_generation(36, 8);
    CHECK(min_generation_lossy(d, g, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("min generation marks the feasibility transition") {
    auto d = testing::random_demand(48, 17);
    auto g = testing::random_generation(48, 18);
    double e_c = 0.8, e_d = 2.0;  // long-duration storage settings
    double bound = min_generation_lossy(d, g, e_c, e_d);
    CHECK(bound > 1.0);
    CHECK_NOTHROW(storage_requirement_lossy(d, g, bound + 1e-6, e_c, e_d));
    CHECK_THROWS_AS(storage_requirement_lossy(d, g, bound - 1e-6, e_c, e_d), InfeasibleError);
}

TEST_CASE("a loose power cap changes nothing") {
    auto d = testing::random_demand(48, 21);
    auto g = testing::random_generation(48, 22);
    double e_c = std::pow(0.8, 0.5), e_d = std::pow(0.8, -0.5);
    double x_g = 1.6;
    double uncapped = storage_requirement_lossy(d, g, x_g, e_c, e_d);
    double max_surplus = 0.0;
    for (int t = 0; t < 48; ++t)
        max_surplus = std::max(max_surplus, x_g * g.values()[static_cast<std::size_t>(t)] -
                                                d.values()[static_cast<std::size_t>(t)]);
    double capped = storage_requirement_power_capped(d, g, x_g, max_surplus * 1.01, e_c, e_d);
    CHECK(capped == doctest::Approx(uncapped).epsilon(1e-12));
}

TEST_CASE("a tight power cap is infeasible") {
    Profile d({0.5, 0.5}, ProfileKind::demand, "d");
    Profile g({1.0, 0.0}, ProfileKind::generation, "g");
    // Deficit hour needs 0.5 from storage but only 0.25 is chargeable.
    CHECK_THROWS_AS(storage_requirement_power_capped(d, g, 2.0, 0.25, 1.0, 1.0),
                    InfeasibleError);
}

TEST_CASE("tightening the cap never lowers the requirement") {
    auto d = testing::random_demand(48, 25);
    auto g = testing::random_generation(48, 26);
    double x_g = 1.8;
    double max_surplus = 0.0, max_deficit = 0.0;
    for (int t = 0; t < 48; ++t) {
        double r = x_g * g.values()[static_cast<std::size_t>(t)] -
                   d.values()[static_cast<std::size_t>(t)];
        max_surplus = std::max(max_surplus, r);
        max_deficit = std::max(max_deficit, -r);
    }
    double previous = storage_requirement_lossy(d, g, x_g, 1.0, 1.0);
    for (double fraction : {1.01, 0.8, 0.6, 0.45}) {
        double cap = std::max(fraction * max_surplus, 1.01 * max_deficit);
        double capped = storage_requirement_power_capped(d, g, x_g, cap, 1.0, 1.0);
        CHECK(capped >= previous - 1e-12);
        previous = capped;
    }
}

TEST_CASE("sweep matches the pointwise scan") {
    auto d = testing::random_demand(48, 31);
    auto g = testing::random_generation(48, 32);
    double e_c = std::pow(0.8, 0.5), e_d = std::pow(0.8, -0.5);
    auto sweep = lossy_sweep(d, g, e_c, e_d, 1.0, 3.0, 17);
    REQUIRE(sweep.size() == 17);
    for (const auto& point : sweep) {
        CHECK(point.x_s ==
              doctest::Approx(storage_requirement_lossy(d, g, point.x_g, e_c, e_d)));
    }
}

TEST_CASE("efficiency arguments are validated") {
    auto d = testing::random_demand(24, 1);
    auto g = testing::random_generation(24, 2);
    CHECK_THROWS_AS(storage_requirement_lossy(d, g, 1.5, 1.2, 1.0), ValidationError);
    CHECK_THROWS_AS(storage_requirement_lossy(d, g, 1.5, 0.9, 0.8), ValidationError);
    CHECK_THROWS_AS(storage_requirement_power_capped(d, g, 1.5, 0.0, 1.0, 1.0),
                    ValidationError);
}

}  // TEST_SUITE
