#include "aoisched/oracle.hpp"

#include "aoisched/errors.hpp"
#include "aoisched/schedulers.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <string>

namespace aoisched {

namespace {

// Age-state graph for a fixed channel count. A transition schedules exactly
// min(K, N) sources, always including every source whose age has reached
// its deadline; everyone else ages by one.
class StateGraph {
public:
    StateGraph(const AoiConstraints& d, std::int64_t channels, const OracleLimits& limits) : d_(d) {
        if (d.empty()) throw InvalidInput("oracle: empty constraint set");
        if (channels < 1) throw InvalidInput("oracle: channel count must be positive");
        if (d.size() > 62) throw BudgetExceeded("oracle: too many sources to enumerate");
        n_ = d.size();
        picks_ = static_cast<std::size_t>(std::min<std::int64_t>(channels, static_cast<std::int64_t>(n_)));
        std::int64_t states = 1;
        radix_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            radix_[i] = states;
            const std::int64_t di = d.deadline(static_cast<SourceIndex>(i));
            if (states > limits.state_budget / di)
                throw BudgetExceeded("oracle: state space exceeds the budget of " +
                                     std::to_string(limits.state_budget) + " states");
            states *= di;
        }
        alive_.assign(static_cast<std::size_t>(states), 1);
        for (std::uint64_t m = (std::uint64_t{1} << picks_) - 1; m < (std::uint64_t{1} << n_); m = next_mask(m))
            masks_.push_back(m);
        prune();
    }

    [[nodiscard]] std::int64_t num_states() const { return static_cast<std::int64_t>(alive_.size()); }
    [[nodiscard]] bool alive(std::int64_t s) const { return alive_[static_cast<std::size_t>(s)] != 0; }

    [[nodiscard]] std::int64_t first_alive() const {
        for (std::size_t s = 0; s < alive_.size(); ++s)
            if (alive_[s]) return static_cast<std::int64_t>(s);
        return -1;
    }

    // Successor under `mask`, or -1 if some unscheduled source would exceed
    // its deadline.
    [[nodiscard]] std::int64_t successor(std::int64_t state, std::uint64_t mask) const {
        std::int64_t next = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            const std::int64_t di = d_.deadline(static_cast<SourceIndex>(i));
            const std::int64_t age = (state / radix_[i]) % di + 1;
            std::int64_t next_age = 1;
            if (!(mask >> i & 1U)) {
                if (age == di) return -1;
                next_age = age + 1;
            }
            next += (next_age - 1) * radix_[i];
        }
        return next;
    }

    // First mask (ascending numeric order) leading to a surviving state.
    [[nodiscard]] std::optional<std::pair<std::uint64_t, std::int64_t>> live_move(std::int64_t state) const {
        for (std::uint64_t m : masks_) {
            const std::int64_t next = successor(state, m);
            if (next >= 0 && alive(next)) return std::pair{m, next};
        }
        return std::nullopt;
    }

    [[nodiscard]] std::size_t picks() const { return picks_; }

private:
    static std::uint64_t next_mask(std::uint64_t m) {
        const std::uint64_t low = m & (~m + 1);
        const std::uint64_t ripple = m + low;
        return ripple | (((m ^ ripple) >> 2) / low);
    }

    void prune() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::int64_t s = 0; s < num_states(); ++s) {
                if (!alive(s)) continue;
                if (!live_move(s)) {
                    alive_[static_cast<std::size_t>(s)] = 0;
                    changed = true;
                }
            }
        }
    }

    const AoiConstraints& d_;
    std::size_t n_ = 0;
    std::size_t picks_ = 0;
    std::vector<std::int64_t> radix_;
    std::vector<std::uint64_t> masks_;
    std::vector<unsigned char> alive_;
};

} // namespace

bool feasible_with(const AoiConstraints& d, std::int64_t channels, OracleLimits limits) {
    return StateGraph(d, channels, limits).first_alive() >= 0;
}

std::int64_t optimal_channels(const AoiConstraints& d, OracleLimits limits) {
    if (d.empty()) throw InvalidInput("oracle: empty constraint set");
    for (std::int64_t k = lower_bound(d);; ++k)
        if (feasible_with(d, k, limits)) return k;
}

CyclicSchedule extract_witness(const AoiConstraints& d, std::int64_t channels, OracleLimits limits) {
    const StateGraph graph(d, channels, limits);
    std::int64_t state = graph.first_alive();
    if (state < 0) throw InvalidInput("oracle: no schedule exists on " + std::to_string(channels) + " channels");

    std::map<std::int64_t, std::size_t> seen;
    std::vector<std::uint64_t> moves;
    while (!seen.contains(state)) {
        seen.emplace(state, moves.size());
        const auto move = graph.live_move(state);
        if (!move) throw InternalError("oracle: surviving state without a surviving successor");
        moves.push_back(move->first);
        state = move->second;
    }
    const std::size_t start = seen.at(state);
    const auto cycle = static_cast<std::int64_t>(moves.size() - start);

    CyclicSchedule schedule;
    for (std::int64_t k = 0; k < channels; ++k) schedule.add_channel(cycle);
    for (std::int64_t t = 0; t < cycle; ++t) {
        std::uint64_t mask = moves[start + static_cast<std::size_t>(t)];
        ChannelIndex channel = 0;
        while (mask != 0) {
            const auto source = static_cast<SourceIndex>(std::countr_zero(mask));
            schedule.place(channel++, t, source);
            mask &= mask - 1;
        }
    }
    detail::require_feasible(schedule, d, "extract_witness");
    return schedule;
}

} // namespace aoisched
