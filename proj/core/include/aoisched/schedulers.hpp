#pragma once

#include "aoisched/constraints.hpp"
#include "aoisched/rational.hpp"
#include "aoisched/schedule.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace aoisched {

/// Average transmission intervals l_n (one per source, ascending) and the
/// smallest positive integer a with a*l_1 integral.
struct IntervalAssignment {
    std::vector<Rational> intervals;
    std::int64_t expansion = 1;

    /// Validates that `intervals` is consecutively divisible and fills in a.
    static IntervalAssignment from_intervals(std::vector<Rational> intervals);

    [[nodiscard]] Rational load() const;
    [[nodiscard]] std::int64_t channels() const { return load().ceil(); }
};

/// Grouping for distinct values: the o_j sources of each distinct deadline u_j
/// share ceil(o_j/u_j) dedicated channels, each source once every u_j slots.
[[nodiscard]] CyclicSchedule gd(const AoiConstraints& d);

/// Harmonic scheduler. Requires is_harmonic(d); uses lower_bound(d) channels.
[[nodiscard]] CyclicSchedule hs(const AoiConstraints& d);

/// Two-distinct-value scheduler for o1 sources with deadline u1 and o2 with
/// deadline u2 (u1 < u2, o1/u1 + o2/u2 integral). Sources 0..o1-1 carry u1,
/// o1..o1+o2-1 carry u2.
[[nodiscard]] CyclicSchedule stv(std::int64_t u1, std::int64_t o1, std::int64_t u2, std::int64_t o2);

/// Optimal schedule for two harmonic families whose combined load is an
/// integer. Source indices refer to concat(d1, d2).
[[nodiscard]] CyclicSchedule harmonic_pair(const AoiConstraints& d1, const AoiConstraints& d2);

/// Concatenation of two instances in canonical (sorted) order, d1's sources
/// ahead of d2's among equal deadlines.
[[nodiscard]] AoiConstraints concat(const AoiConstraints& d1, const AoiConstraints& d2);

/// Scheduler for consecutively divisible integer deadlines; uses
/// lower_bound(d) channels.
[[nodiscard]] CyclicSchedule cas(const AoiConstraints& d);

/// Consecutively divisible interval scheduler: builds the a-expanded
/// schedule, then merges every a expanded slots into one. Source n transmits
/// at least once every ceil(l_n) slots; uses ceil(sum 1/l_n) channels.
[[nodiscard]] CyclicSchedule cs(const IntervalAssignment& l);

namespace detail {

/// Sources with deadlines that are all multiples of `base`, where each value
/// v != base occurs a multiple of v/base times. Sorted ascending.
struct HarmonicFamily {
    std::int64_t base = 1;
    std::vector<SourceIndex> sources;
    std::vector<std::int64_t> deadlines;

    /// Number of stride-`base` sequences the family needs: base * load.
    [[nodiscard]] std::int64_t sequences_needed() const;
    [[nodiscard]] Rational load() const { return Rational(sequences_needed(), base); }
};

[[nodiscard]] bool is_harmonic_family(const HarmonicFamily& family);

/// Stride-u1 sequences for o1 sources followed by stride-u2 sequences for o2
/// sources, on channels [first_channel, first_channel + o1/u1 + o2/u2).
[[nodiscard]] std::vector<ResourceBlockSequence> stv_sequences(std::int64_t u1, std::int64_t o1, std::int64_t u2,
                                                               std::int64_t o2, ChannelIndex first_channel);

/// Hands stride-`family.base` sequences out to the family: base-deadline
/// sources take whole sequences, a source with deadline v takes one of the
/// v/base phases of a sequence at stride v. Consumes sequences in order.
void distribute_family(const HarmonicFamily& family, std::span<const ResourceBlockSequence> sequences,
                       ScheduleBuilder& builder);

/// HS for a family (single-valued families allowed) on channels starting at
/// builder.num_channels(). Returns the number of channels added.
ChannelIndex schedule_family(const HarmonicFamily& family, ScheduleBuilder& builder);

/// STV + HS for two families with integral combined load, base_i < base_j.
ChannelIndex schedule_family_pair(const HarmonicFamily& fi, const HarmonicFamily& fj, ScheduleBuilder& builder);

/// Throws InternalError unless `schedule` verifies against `d`.
void require_feasible(const CyclicSchedule& schedule, const AoiConstraints& d, const char* who);

} // namespace detail

} // namespace aoisched
