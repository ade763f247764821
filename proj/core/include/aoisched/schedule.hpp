#pragma once

#include "aoisched/constraints.hpp"

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace aoisched {

using ChannelIndex = std::int32_t;

/// Resource blocks (start_slot + m*stride, channel) for m = 0, 1, ...
struct ResourceBlockSequence {
    ChannelIndex channel = 0;
    std::int64_t start_slot = 0;
    std::int64_t stride = 1;

    friend bool operator==(const ResourceBlockSequence&, const ResourceBlockSequence&) = default;
};

/// A placement that landed on an already occupied cell.
struct CellConflict {
    ChannelIndex channel = 0;
    std::int64_t slot = 0;
    SourceIndex occupant = -1;
    SourceIndex intruder = -1;

    friend bool operator==(const CellConflict&, const CellConflict&) = default;
};

/// Periodic multi-channel transmission schedule.
///
/// Each channel repeats with its own period; the schedule as a whole repeats
/// with cycle_length() = lcm of the channel periods. Storing channels at
/// their own period keeps GD-style schedules (cycle = lcm of every distinct
/// deadline) small while still exposing the full [channel][slot] grid via
/// at(). Slots are 0-based.
class CyclicSchedule {
public:
    static constexpr SourceIndex kIdle = -1;

    CyclicSchedule() = default;

    ChannelIndex add_channel(std::int64_t period);
    /// Writes `source` at (slot mod period, channel). Writing onto a cell that
    /// holds another source keeps the occupant and records a CellConflict.
    void place(ChannelIndex channel, std::int64_t slot, SourceIndex source);

    [[nodiscard]] SourceIndex at(ChannelIndex channel, std::int64_t slot) const;
    [[nodiscard]] ChannelIndex num_channels() const noexcept { return static_cast<ChannelIndex>(channels_.size()); }
    [[nodiscard]] std::int64_t channel_period(ChannelIndex channel) const;
    [[nodiscard]] std::span<const SourceIndex> channel_cells(ChannelIndex channel) const;
    /// lcm of all channel periods (1 for a schedule without channels).
    /// Throws std::overflow_error if it does not fit in 63 bits.
    [[nodiscard]] std::int64_t cycle_length() const;
    [[nodiscard]] std::span<const CellConflict> conflicts() const noexcept { return conflicts_; }

    /// Appends the channels of `other` after the existing ones. When `remap`
    /// is non-empty, source s of `other` becomes remap[s].
    void append(const CyclicSchedule& other, std::span<const SourceIndex> remap = {});

    friend bool operator==(const CyclicSchedule&, const CyclicSchedule&) = default;

private:
    struct Channel {
        std::int64_t period = 1;
        std::vector<SourceIndex> cells;
        friend bool operator==(const Channel&, const Channel&) = default;
    };

    std::vector<Channel> channels_;
    std::vector<CellConflict> conflicts_;
};

/// Accumulates periodic placements and materialises them into a
/// CyclicSchedule whose per-channel period is the lcm of the strides placed
/// on that channel.
class ScheduleBuilder {
public:
    ChannelIndex add_channel() { return num_channels_++; }
    void reserve_channels(ChannelIndex count) { num_channels_ = std::max(num_channels_, count); }
    [[nodiscard]] ChannelIndex num_channels() const noexcept { return num_channels_; }

    void assign(const ResourceBlockSequence& blocks, SourceIndex source);

    [[nodiscard]] CyclicSchedule build() const;

private:
    struct Placement {
        ResourceBlockSequence blocks;
        SourceIndex source;
    };
    ChannelIndex num_channels_ = 0;
    std::vector<Placement> placements_;
};

[[nodiscard]] std::int64_t checked_lcm(std::int64_t a, std::int64_t b);

} // namespace aoisched
