#pragma once

#include "aoisched/constraints.hpp"
#include "aoisched/rational.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace aoisched {

enum class Algorithm { lb, gd, aion, tga, oracle };

[[nodiscard]] std::string to_string(Algorithm a);
/// Throws InvalidInput for an unknown name.
[[nodiscard]] Algorithm parse_algorithm(const std::string& name);

struct BenchmarkConfig {
    std::vector<std::int64_t> n_values{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    std::int64_t d_min = 2;
    std::int64_t d_max = 10;
    std::int64_t instances = 100;
    std::uint64_t seed = 42;
    Rational gamma{1, 2};
    std::vector<Algorithm> algorithms{Algorithm::lb, Algorithm::gd, Algorithm::aion, Algorithm::tga};
    /// Wall-clock limit for the TGA grouping search on one instance.
    std::optional<std::chrono::milliseconds> time_budget;
    std::int64_t oracle_state_budget = 2'000'000;

    /// Throws InvalidInput unless 2 <= d_min <= d_max, instances >= 1 and
    /// every n >= 1.
    void validate() const;
};

struct Measurement {
    bool ran = false;
    bool timed_out = false;
    std::int64_t channels = 0;
    double millis = 0.0;
};

struct BenchmarkRecord {
    std::int64_t n = 0;
    std::int64_t idx = 0;
    std::uint64_t seed = 0;
    std::int64_t lb = 0;
    Measurement gd;
    Measurement aion;
    Measurement tga;
    Measurement oracle;
};

/// SplitMix64 (Steele, Lea, Flood 2014). Small, fast, and identical on every
/// platform, which is what instance generation needs.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    /// Uniform integer in [lo, hi] by rejection sampling.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);

private:
    std::uint64_t state_;
};

/// Seed of instance `idx` at size `n`, derived from the master seed alone so
/// the instance set does not depend on evaluation order.
[[nodiscard]] std::uint64_t instance_seed(std::uint64_t master, std::int64_t n, std::int64_t idx);

/// n deadlines drawn uniformly from [d_min, d_max].
[[nodiscard]] AoiConstraints generate_instance(std::int64_t n, std::int64_t d_min, std::int64_t d_max,
                                               std::uint64_t seed);

/// Runs every configured algorithm on every instance, verifying each
/// schedule. `on_record` sees records as they complete, in (n, idx) order.
/// A schedule that fails verification throws InternalError.
std::vector<BenchmarkRecord> run_benchmark(const BenchmarkConfig& cfg,
                                           const std::function<void(const BenchmarkRecord&)>& on_record = {});

[[nodiscard]] std::string csv_header();
/// Skipped algorithms leave their columns blank; timeouts read "timeout".
[[nodiscard]] std::string csv_row(const BenchmarkRecord& r);

struct SummaryRow {
    std::int64_t n = 0;
    std::int64_t instances = 0;
    double mean_lb = 0.0;
    /// Means over instances that completed; nullopt if none did or the
    /// algorithm was not run.
    std::optional<double> mean_gd, mean_aion, mean_tga, mean_oracle;
    std::optional<double> gap_gd, gap_aion, gap_tga, gap_oracle;
    std::int64_t timeouts = 0;
};

[[nodiscard]] std::vector<SummaryRow> summarize(const std::vector<BenchmarkRecord>& records);
[[nodiscard]] std::string format_summary(const std::vector<SummaryRow>& rows);

} // namespace aoisched
