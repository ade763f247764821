#include "aoisched/verify.hpp"

#include "aoisched/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace aoisched {

namespace {

struct Occurrence {
    ChannelIndex channel;
    std::int64_t offset;
};

// Positions of every known source, grouped per source.
std::vector<std::vector<Occurrence>> collect(const CyclicSchedule& schedule, std::size_t num_sources) {
    std::vector<std::vector<Occurrence>> by_source(num_sources);
    for (ChannelIndex k = 0; k < schedule.num_channels(); ++k) {
        auto cells = schedule.channel_cells(k);
        for (std::size_t t = 0; t < cells.size(); ++t) {
            SourceIndex s = cells[t];
            if (s >= 0 && static_cast<std::size_t>(s) < num_sources)
                by_source[static_cast<std::size_t>(s)].push_back({k, static_cast<std::int64_t>(t)});
        }
    }
    return by_source;
}

// Transmission slots of one source within its own period P (lcm of the
// periods of the channels it uses). Returns P.
std::int64_t expand(const CyclicSchedule& schedule, const std::vector<Occurrence>& occ, std::vector<char>& hit) {
    std::int64_t period = 1;
    for (const auto& o : occ) period = checked_lcm(period, schedule.channel_period(o.channel));
    hit.assign(static_cast<std::size_t>(period), 0);
    for (const auto& o : occ) {
        const std::int64_t step = schedule.channel_period(o.channel);
        for (std::int64_t t = o.offset; t < period; t += step) hit[static_cast<std::size_t>(t)] = 1;
    }
    return period;
}

std::int64_t max_cyclic_gap(const std::vector<char>& hit, std::int64_t period) {
    std::int64_t first = -1;
    std::int64_t last = -1;
    std::int64_t gap = 0;
    for (std::int64_t t = 0; t < period; ++t) {
        if (!hit[static_cast<std::size_t>(t)]) continue;
        if (first < 0) first = t;
        if (last >= 0) gap = std::max(gap, t - last);
        last = t;
    }
    return std::max(gap, first + period - last);
}

} // namespace

std::int64_t AoiTrace::max_age(SourceIndex n) const {
    const auto& row = ages.at(static_cast<std::size_t>(n));
    return row.empty() ? 0 : *std::max_element(row.begin(), row.end());
}

AoiTrace simulate_aoi(const CyclicSchedule& schedule, const AoiConstraints& d, std::int64_t horizon,
                      std::span<const std::int64_t> initial_ages, SimulationOptions options) {
    if (horizon < 1) throw InvalidInput("simulate_aoi: horizon must be at least 1");
    if (initial_ages.size() != d.size())
        throw InvalidInput("simulate_aoi: expected " + std::to_string(d.size()) + " initial ages, got " +
                           std::to_string(initial_ages.size()));
    const auto occ = collect(schedule, d.size());
    if (!options.allow_unscheduled) {
        for (std::size_t n = 0; n < d.size(); ++n)
            if (occ[n].empty())
                throw InvalidInput("simulate_aoi: source '" + d.id(static_cast<SourceIndex>(n)) +
                                   "' does not appear in the schedule");
    }
    AoiTrace trace;
    trace.horizon = horizon;
    trace.ages.assign(d.size(), std::vector<std::int64_t>(static_cast<std::size_t>(horizon) + 1, 0));
    std::vector<char> sent(d.size());
    for (std::size_t n = 0; n < d.size(); ++n) trace.ages[n][0] = initial_ages[n];
    for (std::int64_t t = 0; t < horizon; ++t) {
        std::fill(sent.begin(), sent.end(), 0);
        for (ChannelIndex k = 0; k < schedule.num_channels(); ++k) {
            SourceIndex s = schedule.at(k, t);
            if (s >= 0 && static_cast<std::size_t>(s) < d.size()) sent[static_cast<std::size_t>(s)] = 1;
        }
        const auto next = static_cast<std::size_t>(t) + 1;
        for (std::size_t n = 0; n < d.size(); ++n)
            trace.ages[n][next] = sent[n] ? 1 : trace.ages[n][next - 1] + 1;
    }
    return trace;
}

std::vector<std::int64_t> steady_state_ages(const CyclicSchedule& schedule, const AoiConstraints& d) {
    const auto occ = collect(schedule, d.size());
    std::vector<std::int64_t> ages(d.size());
    std::vector<char> hit;
    for (std::size_t n = 0; n < d.size(); ++n) {
        if (occ[n].empty())
            throw InvalidInput("steady_state_ages: source '" + d.id(static_cast<SourceIndex>(n)) +
                               "' never transmits");
        const std::int64_t period = expand(schedule, occ[n], hit);
        std::int64_t last = period - 1;
        while (!hit[static_cast<std::size_t>(last)]) --last;
        ages[n] = period - last;
    }
    return ages;
}

std::vector<std::optional<std::int64_t>> worst_gaps(const CyclicSchedule& schedule, std::size_t num_sources) {
    const auto occ = collect(schedule, num_sources);
    std::vector<std::optional<std::int64_t>> gaps(num_sources);
    std::vector<char> hit;
    for (std::size_t n = 0; n < num_sources; ++n) {
        if (occ[n].empty()) continue;
        const std::int64_t period = expand(schedule, occ[n], hit);
        gaps[n] = max_cyclic_gap(hit, period);
    }
    return gaps;
}

VerificationReport verify(const CyclicSchedule& schedule, const AoiConstraints& d) {
    VerificationReport report;
    report.num_channels = schedule.num_channels();
    try {
        report.cycle_length = schedule.cycle_length();
    } catch (const std::overflow_error&) {
        report.cycle_length = -1;
    }
    report.channel_conflicts.assign(schedule.conflicts().begin(), schedule.conflicts().end());
    for (ChannelIndex k = 0; k < schedule.num_channels(); ++k) {
        auto cells = schedule.channel_cells(k);
        for (std::size_t t = 0; t < cells.size(); ++t) {
            SourceIndex s = cells[t];
            if (s < CyclicSchedule::kIdle || (s >= 0 && static_cast<std::size_t>(s) >= d.size()))
                report.unknown_sources.push_back({k, static_cast<std::int64_t>(t), s});
        }
    }
    const auto gaps = worst_gaps(schedule, d.size());
    for (std::size_t n = 0; n < d.size(); ++n) {
        const auto i = static_cast<SourceIndex>(n);
        if (!gaps[n] || *gaps[n] > d.deadline(i))
            report.violations.push_back({i, d.id(i), gaps[n], d.deadline(i)});
    }
    report.feasible =
        report.violations.empty() && report.channel_conflicts.empty() && report.unknown_sources.empty();
    report.lower_bound = d.empty() ? 0 : lower_bound(d);
    report.meets_lower_bound = report.feasible && report.num_channels == report.lower_bound;
    return report;
}

} // namespace aoisched
