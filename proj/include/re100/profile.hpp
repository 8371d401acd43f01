#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "re100/errors.hpp"

namespace re100 {

enum class ProfileKind { demand, generation };

// A normalized periodic hourly series. Values are non-negative, sum to 1
// within 1e-9 (each entry is a fraction of the annual total), and index
// arithmetic is circular. Immutable after construction.
class Profile {
public:
    // Validates the invariants; use normalize() to build one from raw data.
    Profile(std::vector<double> values, ProfileKind kind, std::string label,
            double step_hours = 1.0);

    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t t) const { return values_[t]; }
    int steps() const { return static_cast<int>(values_.size()); }
    ProfileKind kind() const { return kind_; }
    const std::string& label() const { return label_; }
    double step_hours() const { return step_hours_; }

    static constexpr double kSumTolerance = 1e-9;

private:
    std::vector<double> values_;
    ProfileKind kind_;
    std::string label_;
    double step_hours_;
};

// Divides each entry by the raw total so the result sums to 1.
// Throws ValidationError (negative entry, too short) or NormalizationError
// (all-zero series).
Profile normalize(std::span<const double> raw_series, ProfileKind kind,
                  std::string label, double step_hours = 1.0);

// Pointwise generation-share mixture: result(t) = sum_k betas[k] * gens[k](t).
// Betas must be non-negative and sum to 1; all profiles must be generation
// profiles of equal length.
Profile mix(const std::vector<Profile>& generations, const std::vector<double>& betas);

// Parameters for the synthetic patterns; unused fields are ignored.
struct SynthParams {
    double amplitude = 0.5;   // sine patterns: relative swing in [0, 1]
    double phase = 0.0;       // sine patterns: radians
    int on_start = 1;         // block: first active step, 1-based inclusive
    int on_end = 1;           // block: last active step, 1-based inclusive (may wrap)
    double noise = 0.25;      // seeded-noise-mix: relative noise level
};

// Deterministic synthetic profiles for desk-scale experiments.
// Patterns: uniform | diurnal-sine | seasonal-sine | block | seeded-noise-mix.
Profile synth(const std::string& pattern, int steps, const SynthParams& params = {},
              std::uint64_t seed = 0, ProfileKind kind = ProfileKind::generation,
              std::string label = "");

// One region/year of data: a demand profile plus named unit-generation
// profiles, all sharing the same length and step.
struct ProfileSet {
    Profile demand;
    std::vector<std::pair<std::string, Profile>> generations;
    std::string region;
    std::string year;
    // Timestamps carried through from ingestion (informative only; order
    // defines t). Empty when synthesized.
    std::vector<std::string> timestamps;

    int steps() const { return demand.steps(); }
    const Profile& generation(const std::string& name) const;
};

}  // namespace re100
