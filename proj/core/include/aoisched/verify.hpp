#pragma once

#include "aoisched/constraints.hpp"
#include "aoisched/schedule.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace aoisched {

/// Ages A_n(t) for t = 0..horizon, produced by repeating a schedule.
struct AoiTrace {
    std::int64_t horizon = 0;
    /// ages[n][t]; ages[n][0] is the initial age.
    std::vector<std::vector<std::int64_t>> ages;

    [[nodiscard]] std::int64_t max_age(SourceIndex n) const;
};

struct SimulationOptions {
    /// Permit sources that never transmit (their age then grows without bound).
    bool allow_unscheduled = false;
};

/// Runs the slot recursion A(t+1) = 1 if the source transmits in slot t,
/// A(t) + 1 otherwise, reading decisions from `schedule` with t wrapped per
/// channel period.
[[nodiscard]] AoiTrace simulate_aoi(const CyclicSchedule& schedule, const AoiConstraints& d, std::int64_t horizon,
                                    std::span<const std::int64_t> initial_ages, SimulationOptions options = {});

/// Ages at t = 0 when the schedule is taken to have been running forever:
/// slots elapsed since each source's last transmission before slot 0.
[[nodiscard]] std::vector<std::int64_t> steady_state_ages(const CyclicSchedule& schedule, const AoiConstraints& d);

struct GapViolation {
    SourceIndex source = -1;
    std::string id;
    /// Longest cyclic gap between transmissions; nullopt if never scheduled.
    std::optional<std::int64_t> worst_gap;
    std::int64_t deadline = 0;
};

struct UnknownReference {
    ChannelIndex channel = 0;
    std::int64_t slot = 0;
    SourceIndex source = -1;
};

struct VerificationReport {
    bool feasible = false;
    std::vector<GapViolation> violations;
    std::vector<CellConflict> channel_conflicts;
    /// Cells naming a source index that does not exist in the constraints.
    std::vector<UnknownReference> unknown_sources;
    std::int64_t num_channels = 0;
    std::int64_t cycle_length = 0;
    std::int64_t lower_bound = 0;
    bool meets_lower_bound = false;
};

/// Steady-state feasibility: no cell conflicts, every source transmits at
/// least once per cycle, and the longest cyclic gap between consecutive
/// transmissions of source n is at most d_n.
[[nodiscard]] VerificationReport verify(const CyclicSchedule& schedule, const AoiConstraints& d);

/// Per-source worst cyclic gap (nullopt when a source never transmits).
[[nodiscard]] std::vector<std::optional<std::int64_t>> worst_gaps(const CyclicSchedule& schedule, std::size_t num_sources);

} // namespace aoisched
