#pragma once

#include "aoisched/constraints.hpp"
#include "aoisched/schedule.hpp"
#include "aoisched/verify.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace aoisched {

/// Parses {"id": string, "d": [int, ...], "sources": [string, ...]}.
/// "sources" is optional; without it sources are named s1, s2, ... by
/// position. Throws InvalidInput naming the offending field.
[[nodiscard]] AoiConstraints parse_constraints_json(std::string_view text);

/// Inverse of parse_constraints_json; deadlines and ids in input order.
[[nodiscard]] std::string constraints_to_json(const AoiConstraints& d);

struct ScheduleJsonOptions {
    /// Refuse to expand schedules whose full grid exceeds this many cells.
    std::int64_t max_cells = std::int64_t{1} << 24;
    int indent = -1;
};

/// {"cycle_length": C, "grid": [[id or null, ...], ...], "num_channels": K}
/// with the grid expanded to the full cycle. Keys are sorted.
[[nodiscard]] std::string schedule_to_json(const CyclicSchedule& schedule, const AoiConstraints& d,
                                           ScheduleJsonOptions options = {});

struct ParsedSchedule {
    CyclicSchedule schedule;
    /// Identifiers absent from the constraints. Such a cell holds source
    /// index d.size() + k for unknown_ids[k], which verify() reports.
    std::vector<std::string> unknown_ids;
};

/// Reads a schedule JSON against `d`. A cell may also hold an array of ids;
/// every id after the first is recorded as a cell conflict.
[[nodiscard]] ParsedSchedule parse_schedule_json(std::string_view text, const AoiConstraints& d);

/// Verification report as JSON, naming sources by id.
[[nodiscard]] std::string report_to_json(const VerificationReport& report, const AoiConstraints& d,
                                         const std::vector<std::string>& unknown_ids = {});

} // namespace aoisched
