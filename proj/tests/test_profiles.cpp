#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "re100/profile.hpp"

using namespace re100;

TEST_SUITE("profiles") {

TEST_CASE("normalize divides by the raw total") {
    std::vector<double> uniform{7.0, 7.0, 7.0, 7.0};
    auto p = normalize(uniform, ProfileKind::demand, "u");
    for (double v : p.values()) CHECK(v == doctest::Approx(0.25).epsilon(1e-12));

    std::vector<double> pair{1.0, 3.0};
    auto q = normalize(pair, ProfileKind::generation, "q");
    CHECK(q.values()[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(q.values()[1] == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("normalize rejects degenerate input") {
    std::vector<double> zeros{0.0, 0.0, 0.0};
    CHECK_THROWS_AS(normalize(zeros, ProfileKind::demand, "z"), NormalizationError);

    std::vector<double> negative{1.0, -0.5, 2.0};
    CHECK_THROWS_WITH_AS(normalize(negative, ProfileKind::demand, "n"),
                         doctest::Contains("index 1"), ValidationError);

    std::vector<double> single{1.0};
    CHECK_THROWS_AS(normalize(single, ProfileKind::demand, "s"), ValidationError);
}

TEST_CASE("every constructed profile sums to 1 and is non-negative") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto p = testing::random_generation(48, seed);
        double sum = 0.0;
        double lowest = 1.0;
        for (double v : p.values()) {
            sum += v;
            lowest = std::min(lowest, v);
        }
        CHECK(std::abs(sum - 1.0) <= 1e-9);
        CHECK(lowest >= 0.0);
    }
}

TEST_CASE("mix with a single unit share is the identity") {
    auto g = testing::random_generation(24, 5);
    auto m = mix({g}, {1.0});
    for (int t = 0; t < 24; ++t)
        CHECK(m.values()[static_cast<std::size_t>(t)] ==
              g.values()[static_cast<std::size_t>(t)]);
}

TEST_CASE("mix of complementary blocks is uniform") {
    Profile a({0.5, 0.5, 0.0, 0.0}, ProfileKind::generation, "a");
    Profile b({0.0, 0.0, 0.5, 0.5}, ProfileKind::generation, "b");
    auto m = mix({a, b}, {0.5, 0.5});
    for (double v : m.values()) CHECK(v == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("mix is the pointwise share-weighted sum") {
    auto g1 = testing::random_generation(36, 11);
    auto g2 = testing::random_generation(36, 12);
    auto m = mix({g1, g2}, {0.3, 0.7});
    double sum = 0.0;
    for (int t = 0; t < 36; ++t) {
        auto tt = static_cast<std::size_t>(t);
        CHECK(m.values()[tt] ==
              doctest::Approx(0.3 * g1.values()[tt] + 0.7 * g2.values()[tt]).epsilon(1e-12));
        sum += m.values()[tt];
    }
    CHECK(std::abs(sum - 1.0) <= 1e-9);
}

TEST_CASE("mix validates shares and shapes") {
    auto g1 = testing::random_generation(24, 1);
    auto g2 = testing::random_generation(36, 2);
    CHECK_THROWS_AS(mix({g1, g2}, {0.5, 0.5}), ValidationError);
    auto g3 = testing::random_generation(24, 3);
    CHECK_THROWS_AS(mix({g1, g3}, {0.6, 0.6}), ValidationError);
    auto d = testing::random_demand(24, 4);
    CHECK_THROWS_AS(mix({g1, d}, {0.5, 0.5}), ValidationError);
}

TEST_CASE("synth uniform and block") {
    auto u = synth("uniform", 4);
    for (double v : u.values()) CHECK(v == doctest::Approx(0.25).epsilon(1e-15));

    SynthParams params;
    params.on_start = 1;
    params.on_end = 2;
    auto b = synth("block", 4, params);
    CHECK(b.values()[0] == doctest::Approx(0.5));
    CHECK(b.values()[1] == doctest::Approx(0.5));
    CHECK(b.values()[2] == 0.0);
    CHECK(b.values()[3] == 0.0);
}

TEST_CASE("synth block range may wrap") {
    SynthParams params;
    params.on_start = 4;
    params.on_end = 1;
    auto b = synth("block", 4, params);
    CHECK(b.values()[3] == doctest::Approx(0.5));
    CHECK(b.values()[0] == doctest::Approx(0.5));
    CHECK(b.values()[1] == 0.0);
}

TEST_CASE("synth is deterministic in the seed") {
    SynthParams params;
    auto a = synth("diurnal-sine", 24, params, 7);
    auto b = synth("diurnal-sine", 24, params, 7);
    CHECK(a.values() == b.values());

    auto n1 = synth("seeded-noise-mix", 96, params, 42);
    auto n2 = synth("seeded-noise-mix", 96, params, 42);
    CHECK(n1.values() == n2.values());
    auto n3 = synth("seeded-noise-mix", 96, params, 43);
    CHECK(n1.values() != n3.values());
}

TEST_CASE("synth rejects unknown patterns") {
    CHECK_THROWS_AS(synth("stochastic-weather", 24), ValidationError);
}

}  // TEST_SUITE
