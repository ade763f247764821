#pragma once

#include "aoisched/constraints.hpp"
#include "aoisched/interval_optimizer.hpp"
#include "aoisched/rational.hpp"
#include "aoisched/schedule.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

namespace aoisched {

/// Wall-clock limit for the grouping search. Exceeding it throws
/// BudgetExceeded.
struct SearchLimits {
    std::optional<std::chrono::steady_clock::time_point> deadline;

    static SearchLimits within(std::chrono::milliseconds budget) {
        return {std::chrono::steady_clock::now() + budget};
    }
};

// ---------------------------------------------------------------------------
// Harmonic source identification

/// One harmonic block found by HSI: a single harmonic family (first pass) or
/// a pair of families joined by STV (second pass).
struct HsiComponent {
    int pass = 1;
    std::int64_t base = 0;
    /// Second family's base for pass-2 components, 0 otherwise.
    std::int64_t pair_base = 0;
    std::vector<SourceIndex> sources;
    std::int64_t channels = 0;
};

struct HsiResult {
    /// Sources scheduled by the harmonic pass, ascending.
    std::vector<SourceIndex> harmonic_sources;
    /// Everything else, ascending.
    std::vector<SourceIndex> remainder;
    /// Schedule for harmonic_sources only; indices refer to the input.
    CyclicSchedule schedule;
    /// Equals sum of 1/d_n over harmonic_sources, which is an integer.
    std::int64_t channels_used = 0;
    std::vector<HsiComponent> components;
    /// Distinct deadline values left after the first and after the second pass.
    std::vector<std::int64_t> values_after_first_pass;
    std::vector<std::int64_t> values_after_second_pass;
};

enum class HsiPasses { first_only, both };

/// Finds sources that can be scheduled on fully utilised channels: first
/// whole-channel harmonic prefixes per base value, then pairs of harmonic
/// families with different bases sharing a common factor.
[[nodiscard]] HsiResult hsi(const AoiConstraints& d, HsiPasses passes = HsiPasses::both);

// ---------------------------------------------------------------------------
// Heuristic grouping

/// Rate inflation of a source with deadline `deadline` when it joins a group
/// centred on `center_deadline`: the smallest feasible rate 1/l (with l a
/// multiple or divisor of the center's deadline) minus 1/deadline.
[[nodiscard]] Rational distance(std::int64_t center_deadline, std::int64_t deadline);

struct Group {
    /// Indices into the instance passed to hga(), ascending.
    std::vector<SourceIndex> members;
    std::int64_t center_deadline = 0;
    ChainSolution chain;
    /// Indices refer to positions within `members`.
    CyclicSchedule sub_schedule;
};

struct GroupingScheme {
    std::vector<Group> groups;
    std::int64_t total_channels = 0;
    std::vector<SourceIndex> leftover;

    /// Channels of every group side by side; indices refer to the hga input.
    [[nodiscard]] CyclicSchedule combined_schedule() const;
};

/// Splits the sources into groups, each scheduled as one consecutively
/// divisible chain, looking for fewer total channels than a single chain.
[[nodiscard]] GroupingScheme hga(const AoiConstraints& d, const Rational& gamma = Rational(1, 2),
                                 const SearchLimits& limits = {});

// ---------------------------------------------------------------------------
// Two-step grouping

struct TgaResult {
    CyclicSchedule schedule;
    GroupingScheme grouping;
    HsiResult harmonic;
    /// Position in the input of each source handed to hga().
    std::vector<SourceIndex> grouped_sources;
    /// True if the second harmonic pass was discarded because it did not
    /// remove any distinct deadline value from the remainder.
    bool second_pass_rolled_back = false;
    std::int64_t channels = 0;
};

/// HSI on the full instance, then HGA on whatever HSI leaves.
[[nodiscard]] TgaResult tga(const AoiConstraints& d, const Rational& gamma = Rational(1, 2),
                            const SearchLimits& limits = {});

} // namespace aoisched
