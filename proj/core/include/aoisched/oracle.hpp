#pragma once

#include "aoisched/constraints.hpp"
#include "aoisched/schedule.hpp"

#include <cstdint>
#include <vector>

namespace aoisched {

/// Ages of every source at one slot boundary, each in [1, d_n].
struct StateNode {
    std::vector<std::int64_t> ages;

    friend bool operator==(const StateNode&, const StateNode&) = default;
};

struct OracleLimits {
    /// Largest state space (product of deadlines) the oracle will enumerate.
    std::int64_t state_budget = 2'000'000;
};

/// Smallest channel count admitting any feasible schedule, found by pruning
/// the age-state graph until every surviving state has a surviving successor.
/// Throws BudgetExceeded when the product of deadlines exceeds the budget.
[[nodiscard]] std::int64_t optimal_channels(const AoiConstraints& d, OracleLimits limits = {});

/// True if some schedule on `channels` channels meets every deadline.
[[nodiscard]] bool feasible_with(const AoiConstraints& d, std::int64_t channels, OracleLimits limits = {});

/// A feasible cyclic schedule on `channels` channels read off a cycle of the
/// pruned state graph. Throws InvalidInput if none exists.
[[nodiscard]] CyclicSchedule extract_witness(const AoiConstraints& d, std::int64_t channels, OracleLimits limits = {});

} // namespace aoisched
