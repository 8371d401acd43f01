#include "re100/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace re100 {

namespace {

double checked_sum(const std::vector<double>& values) {
    double sum = 0.0, comp = 0.0;  // Kahan
    for (double v : values) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

}  // namespace

Profile::Profile(std::vector<double> values, ProfileKind kind, std::string label,
                 double step_hours)
    : values_(std::move(values)), kind_(kind), label_(std::move(label)),
      step_hours_(step_hours) {
    if (values_.size() < 2)
        throw ValidationError("profile '" + label_ + "': needs at least 2 steps, got " +
                              std::to_string(values_.size()));
    if (step_hours_ <= 0.0)
        throw ValidationError("profile '" + label_ + "': step_hours must be positive");
    for (std::size_t t = 0; t < values_.size(); ++t) {
        if (!(values_[t] >= 0.0))
            throw ValidationError("profile '" + label_ + "': negative value at index " +
                                  std::to_string(t));
    }
    double sum = checked_sum(values_);
    if (std::abs(sum - 1.0) > kSumTolerance)
        throw ValidationError("profile '" + label_ + "': values sum to " +
                              std::to_string(sum) + ", expected 1");
}

Profile normalize(std::span<const double> raw_series, ProfileKind kind,
                  std::string label, double step_hours) {
    if (raw_series.size() < 2)
        throw ValidationError("normalize('" + label + "'): needs at least 2 values, got " +
                              std::to_string(raw_series.size()));
    double total = 0.0, comp = 0.0;
    for (std::size_t t = 0; t < raw_series.size(); ++t) {
        double v = raw_series[t];
        if (!(v >= 0.0) || std::isnan(v))
            throw ValidationError("normalize('" + label + "'): negative value at index " +
                                  std::to_string(t));
        double y = v - comp;
        double s = total + y;
        comp = (s - total) - y;
        total = s;
    }
    if (total <= 0.0)
        throw NormalizationError("normalize('" + label + "'): series total is zero");

    std::vector<double> values(raw_series.size());
    if (std::abs(total - 1.0) <= Profile::kSumTolerance) {
        // Already normalized (e.g. re-ingested export); keep bits as-is so
        // ingest/export round-trips are stable.
        std::copy(raw_series.begin(), raw_series.end(), values.begin());
    } else {
        for (std::size_t t = 0; t < raw_series.size(); ++t)
            values[t] = raw_series[t] / total;
    }
    return Profile(std::move(values), kind, std::move(label), step_hours);
}

Profile mix(const std::vector<Profile>& generations, const std::vector<double>& betas) {
    if (generations.empty())
        throw ValidationError("mix: no profiles given");
    if (generations.size() != betas.size())
        throw ValidationError("mix: " + std::to_string(generations.size()) +
                              " profiles but " + std::to_string(betas.size()) + " shares");
    int steps = generations.front().steps();
    double beta_sum = 0.0;
    for (std::size_t k = 0; k < generations.size(); ++k) {
        if (generations[k].steps() != steps)
            throw ValidationError("mix: profile '" + generations[k].label() +
                                  "' has mismatched length");
        if (generations[k].kind() != ProfileKind::generation)
            throw ValidationError("mix: profile '" + generations[k].label() +
                                  "' is not a generation profile");
        if (!(betas[k] >= 0.0))
            throw ValidationError("mix: negative share at index " + std::to_string(k));
        beta_sum += betas[k];
    }
    if (std::abs(beta_sum - 1.0) > Profile::kSumTolerance)
        throw ValidationError("mix: shares sum to " + std::to_string(beta_sum) +
                              ", expected 1");

    std::vector<double> values(static_cast<std::size_t>(steps), 0.0);
    std::string label;
    for (std::size_t k = 0; k < generations.size(); ++k) {
        const auto& g = generations[k].values();
        for (int t = 0; t < steps; ++t)
            values[static_cast<std::size_t>(t)] += betas[k] * g[static_cast<std::size_t>(t)];
        if (!label.empty()) label += "+";
        label += generations[k].label();
    }
    // Mixture of normalized profiles with unit-sum weights is normalized up to
    // rounding; rescale the residual so the Profile invariant holds exactly.
    double sum = 0.0;
    for (double v : values) sum += v;
    if (sum > 0.0 && std::abs(sum - 1.0) > 1e-12) {
        for (double& v : values) v /= sum;
    }
    return Profile(std::move(values), ProfileKind::generation, std::move(label),
                   generations.front().step_hours());
}

namespace {

// Deterministic cross-platform uniform in [0, 1) from splitmix64 — avoids the
// implementation-defined std:: distributions.
struct Splitmix64 {
    std::uint64_t state;
    explicit Splitmix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace

Profile synth(const std::string& pattern, int steps, const SynthParams& params,
              std::uint64_t seed, ProfileKind kind, std::string label) {
    if (steps < 2)
        throw ValidationError("synth: needs at least 2 steps, got " + std::to_string(steps));
    if (label.empty()) label = pattern;
    const auto n = static_cast<std::size_t>(steps);
    std::vector<double> raw(n, 0.0);
    const double two_pi = 2.0 * std::numbers::pi;

    if (pattern == "uniform") {
        std::fill(raw.begin(), raw.end(), 1.0);
    } else if (pattern == "diurnal-sine") {
        double period = std::min(24.0, static_cast<double>(steps));
        for (std::size_t t = 0; t < n; ++t) {
            double x = 1.0 + params.amplitude *
                                 std::sin(two_pi * static_cast<double>(t) / period + params.phase);
            raw[t] = std::max(x, 0.0);
        }
    } else if (pattern == "seasonal-sine") {
        for (std::size_t t = 0; t < n; ++t) {
            double x = 1.0 + params.amplitude *
                                 std::sin(two_pi * static_cast<double>(t) / steps + params.phase);
            raw[t] = std::max(x, 0.0);
        }
    } else if (pattern == "block") {
        int lo = params.on_start, hi = params.on_end;
        if (lo < 1 || lo > steps || hi < 1 || hi > steps)
            throw ValidationError("synth(block): on-range outside 1.." + std::to_string(steps));
        for (int t = lo;; t = t % steps + 1) {
            raw[static_cast<std::size_t>(t - 1)] = 1.0;
            if (t == hi) break;
        }
    } else if (pattern == "seeded-noise-mix") {
        Splitmix64 rng(seed);
        double w_diurnal = rng.uniform();
        double w_seasonal = rng.uniform();
        double phase_d = rng.uniform() * two_pi;
        double phase_s = rng.uniform() * two_pi;
        double period = std::min(24.0, static_cast<double>(steps));
        for (std::size_t t = 0; t < n; ++t) {
            double base = 1.0 +
                          w_diurnal * std::sin(two_pi * static_cast<double>(t) / period + phase_d) +
                          w_seasonal * std::sin(two_pi * static_cast<double>(t) / steps + phase_s);
            double jitter = 1.0 + params.noise * (2.0 * rng.uniform() - 1.0);
            raw[t] = std::max(base * jitter, 0.0);
        }
        // Guard against a degenerate all-zero draw.
        raw[0] = std::max(raw[0], 1e-6);
    } else {
        throw ValidationError("synth: unknown pattern '" + pattern + "'");
    }

    return normalize(raw, kind, std::move(label));
}

const Profile& ProfileSet::generation(const std::string& name) const {
    for (const auto& [label, profile] : generations)
        if (label == name) return profile;
    throw ValidationError("profile set has no generation source '" + name + "'");
}

}  // namespace re100
