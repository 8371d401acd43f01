#pragma once

#include <cstdint>
#include <vector>

#include "re100/profile.hpp"

namespace re100::testing {

// Deterministic random instances for property tests.
inline Profile random_demand(int steps, std::uint64_t seed) {
    SynthParams params;
    params.noise = 0.35;
    return synth("seeded-noise-mix", steps, params, seed, ProfileKind::demand,
                 "d" + std::to_string(seed));
}

inline Profile random_generation(int steps, std::uint64_t seed) {
    SynthParams params;
    params.noise = 0.6;
    return synth("seeded-noise-mix", steps, params, seed * 2654435761ULL + 1,
                 ProfileKind::generation, "g" + std::to_string(seed));
}

// splitmix64, for test-local draws independent of the library internals.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

}  // namespace re100::testing
