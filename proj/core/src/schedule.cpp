#include "aoisched/schedule.hpp"

#include "aoisched/errors.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace aoisched {

namespace {

// Upper limit on cells materialised for a single channel.
constexpr std::int64_t kMaxChannelPeriod = std::int64_t{1} << 27;

std::int64_t wrap(std::int64_t slot, std::int64_t period) noexcept {
    std::int64_t r = slot % period;
    return r < 0 ? r + period : r;
}

} // namespace

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
    if (a <= 0 || b <= 0) throw std::invalid_argument("lcm of non-positive value");
    std::int64_t g = std::gcd(a, b);
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a / g, b, &out)) throw std::overflow_error("lcm overflow");
    return out;
}

ChannelIndex CyclicSchedule::add_channel(std::int64_t period) {
    if (period < 1) throw InvalidInput("channel period must be positive");
    if (period > kMaxChannelPeriod)
        throw InternalError("channel period " + std::to_string(period) + " exceeds materialisation limit");
    channels_.push_back({period, std::vector<SourceIndex>(static_cast<std::size_t>(period), kIdle)});
    return num_channels() - 1;
}

void CyclicSchedule::place(ChannelIndex channel, std::int64_t slot, SourceIndex source) {
    Channel& ch = channels_.at(static_cast<std::size_t>(channel));
    std::int64_t t = wrap(slot, ch.period);
    SourceIndex& cell = ch.cells[static_cast<std::size_t>(t)];
    if (cell == kIdle || cell == source) {
        cell = source;
    } else {
        conflicts_.push_back({channel, t, cell, source});
    }
}

SourceIndex CyclicSchedule::at(ChannelIndex channel, std::int64_t slot) const {
    const Channel& ch = channels_.at(static_cast<std::size_t>(channel));
    return ch.cells[static_cast<std::size_t>(wrap(slot, ch.period))];
}

std::int64_t CyclicSchedule::channel_period(ChannelIndex channel) const {
    return channels_.at(static_cast<std::size_t>(channel)).period;
}

std::span<const SourceIndex> CyclicSchedule::channel_cells(ChannelIndex channel) const {
    return channels_.at(static_cast<std::size_t>(channel)).cells;
}

std::int64_t CyclicSchedule::cycle_length() const {
    std::int64_t c = 1;
    for (const auto& ch : channels_) c = checked_lcm(c, ch.period);
    return c;
}

void CyclicSchedule::append(const CyclicSchedule& other, std::span<const SourceIndex> remap) {
    auto map = [&](SourceIndex s) {
        if (s == kIdle || remap.empty()) return s;
        return remap[static_cast<std::size_t>(s)];
    };
    const ChannelIndex offset = num_channels();
    for (const auto& ch : other.channels_) {
        Channel copy{ch.period, ch.cells};
        for (auto& cell : copy.cells) cell = map(cell);
        channels_.push_back(std::move(copy));
    }
    for (const auto& c : other.conflicts_)
        conflicts_.push_back({c.channel + offset, c.slot, map(c.occupant), map(c.intruder)});
}

void ScheduleBuilder::assign(const ResourceBlockSequence& blocks, SourceIndex source) {
    if (blocks.stride < 1) throw InternalError("resource block stride must be positive");
    if (blocks.channel < 0) throw InternalError("negative channel index");
    num_channels_ = std::max<ChannelIndex>(num_channels_, blocks.channel + 1);
    ResourceBlockSequence normalized = blocks;
    normalized.start_slot = wrap(blocks.start_slot, blocks.stride);
    placements_.push_back({normalized, source});
}

CyclicSchedule ScheduleBuilder::build() const {
    std::vector<std::int64_t> period(static_cast<std::size_t>(num_channels_), 1);
    for (const auto& p : placements_) {
        auto& per = period[static_cast<std::size_t>(p.blocks.channel)];
        per = checked_lcm(per, p.blocks.stride);
    }
    CyclicSchedule out;
    for (std::int64_t per : period) out.add_channel(per);
    for (const auto& p : placements_) {
        const std::int64_t per = period[static_cast<std::size_t>(p.blocks.channel)];
        for (std::int64_t t = p.blocks.start_slot; t < per; t += p.blocks.stride)
            out.place(p.blocks.channel, t, p.source);
    }
    return out;
}

} // namespace aoisched
