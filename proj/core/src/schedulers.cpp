#include "aoisched/schedulers.hpp"

#include "aoisched/errors.hpp"
#include "aoisched/verify.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

namespace aoisched {

namespace detail {

std::int64_t HarmonicFamily::sequences_needed() const {
    // A source with deadline v uses base/v of a sequence.
    std::int64_t total = 0;
    std::size_t i = 0;
    while (i < deadlines.size()) {
        std::size_t j = i;
        while (j < deadlines.size() && deadlines[j] == deadlines[i]) ++j;
        const auto count = static_cast<std::int64_t>(j - i);
        const std::int64_t ratio = deadlines[i] / base;
        total += count / ratio;
        i = j;
    }
    return total;
}

bool is_harmonic_family(const HarmonicFamily& family) {
    if (family.base < 1 || family.sources.size() != family.deadlines.size()) return false;
    if (!std::is_sorted(family.deadlines.begin(), family.deadlines.end())) return false;
    std::size_t i = 0;
    while (i < family.deadlines.size()) {
        const std::int64_t v = family.deadlines[i];
        if (v % family.base != 0) return false;
        std::size_t j = i;
        while (j < family.deadlines.size() && family.deadlines[j] == v) ++j;
        if (static_cast<std::int64_t>(j - i) % (v / family.base) != 0) return false;
        i = j;
    }
    return true;
}

std::vector<ResourceBlockSequence> stv_sequences(std::int64_t u1, std::int64_t o1, std::int64_t u2, std::int64_t o2,
                                                 ChannelIndex first_channel) {
    if (u1 < 1 || u2 <= u1) throw InvalidInput("stv: requires 1 <= u1 < u2");
    if (o1 < 1 || o2 < 1) throw InvalidInput("stv: both occurrence counts must be positive");
    const Rational load = Rational(o1, u1) + Rational(o2, u2);
    if (!load.is_integer())
        throw InvalidInput("stv: o1/u1 + o2/u2 = " + load.str() + " is not an integer");
    const std::int64_t b = load.num();
    const std::int64_t g = std::gcd(u1, u2);
    // o1 divisible by u1/g and o2 by u2/g follows from o1*u2 + o2*u1 = b*u1*u2.
    if (o1 % (u1 / g) != 0 || o2 % (u2 / g) != 0)
        throw InternalError("stv: occurrence counts not divisible by u/gcd");
    const std::int64_t alpha = o1 * g / u1;
    const std::int64_t beta = o2 * g / u2;
    if (alpha + beta != b * g) throw InternalError("stv: group block count mismatch");

    // Slots split into groups of g consecutive slots, each holding g*b blocks
    // numbered slot-major. u1 sources sit at block positions [0, alpha) in
    // every group, u2 sources at [alpha, alpha + beta).
    std::vector<ResourceBlockSequence> out;
    out.reserve(static_cast<std::size_t>(o1 + o2));
    auto block = [&](std::int64_t phase, std::int64_t pos, std::int64_t stride) {
        return ResourceBlockSequence{first_channel + static_cast<ChannelIndex>(pos % b), phase * g + pos / b, stride};
    };
    for (std::int64_t r = 0; r < o1; ++r) out.push_back(block(r / alpha, r % alpha, u1));
    for (std::int64_t r = 0; r < o2; ++r) out.push_back(block(r / beta, alpha + r % beta, u2));
    return out;
}

void distribute_family(const HarmonicFamily& family, std::span<const ResourceBlockSequence> sequences,
                       ScheduleBuilder& builder) {
    const std::int64_t base = family.base;
    std::size_t next_seq = 0;
    std::size_t i = 0;
    while (i < family.deadlines.size()) {
        const std::int64_t v = family.deadlines[i];
        const std::int64_t ratio = v / base;
        std::size_t j = i;
        while (j < family.deadlines.size() && family.deadlines[j] == v) ++j;
        for (std::size_t s = i; s < j; ++s) {
            const auto within = static_cast<std::int64_t>(s - i);
            const std::size_t q = next_seq + static_cast<std::size_t>(within / ratio);
            if (q >= sequences.size()) throw InternalError("harmonic distribution ran out of sequences");
            const auto& seq = sequences[q];
            if (seq.stride != base) throw InternalError("harmonic distribution: sequence stride differs from base");
            builder.assign({seq.channel, seq.start_slot + (within % ratio) * base, v}, family.sources[s]);
        }
        next_seq += static_cast<std::size_t>(static_cast<std::int64_t>(j - i) / ratio);
        i = j;
    }
}

ChannelIndex schedule_family(const HarmonicFamily& family, ScheduleBuilder& builder) {
    if (family.sources.empty()) return 0;
    if (!is_harmonic_family(family)) throw InvalidInput("schedule_family: not a harmonic family");
    // GD on sequences_needed() copies of the base deadline: round-robin over
    // ceil(M/base) channels, sequence r at (slot r / c, channel r % c).
    const std::int64_t m = family.sequences_needed();
    const std::int64_t c = (m + family.base - 1) / family.base;
    const ChannelIndex first = builder.num_channels();
    builder.reserve_channels(first + static_cast<ChannelIndex>(c));
    std::vector<ResourceBlockSequence> seqs;
    seqs.reserve(static_cast<std::size_t>(m));
    for (std::int64_t r = 0; r < m; ++r)
        seqs.push_back({first + static_cast<ChannelIndex>(r % c), r / c, family.base});
    distribute_family(family, seqs, builder);
    return static_cast<ChannelIndex>(c);
}

ChannelIndex schedule_family_pair(const HarmonicFamily& fi, const HarmonicFamily& fj, ScheduleBuilder& builder) {
    if (!is_harmonic_family(fi) || !is_harmonic_family(fj))
        throw InvalidInput("harmonic pair: both inputs must be harmonic families");
    if (fi.base >= fj.base) throw InvalidInput("harmonic pair: bases must be strictly increasing");
    const std::int64_t ni = fi.sequences_needed();
    const std::int64_t nj = fj.sequences_needed();
    const ChannelIndex first = builder.num_channels();
    const auto seqs = stv_sequences(fi.base, ni, fj.base, nj, first);
    const std::int64_t channels = (Rational(ni, fi.base) + Rational(nj, fj.base)).num();
    builder.reserve_channels(first + static_cast<ChannelIndex>(channels));
    std::span<const ResourceBlockSequence> all(seqs);
    distribute_family(fi, all.first(static_cast<std::size_t>(ni)), builder);
    distribute_family(fj, all.subspan(static_cast<std::size_t>(ni)), builder);
    return static_cast<ChannelIndex>(channels);
}

void require_feasible(const CyclicSchedule& schedule, const AoiConstraints& d, const char* who) {
    const auto report = verify(schedule, d);
    if (report.feasible) return;
    std::ostringstream msg;
    msg << who << ": constructed schedule failed verification (" << report.violations.size() << " gap violations, "
        << report.channel_conflicts.size() << " cell conflicts";
    if (!report.violations.empty()) {
        const auto& v = report.violations.front();
        msg << "; first: source " << v.id << " gap " << (v.worst_gap ? std::to_string(*v.worst_gap) : "inf")
            << " > " << v.deadline;
    }
    msg << ")";
    throw InternalError(msg.str());
}

} // namespace detail

namespace {

detail::HarmonicFamily whole_family(const AoiConstraints& d, std::int64_t base) {
    detail::HarmonicFamily f;
    f.base = base;
    for (std::size_t i = 0; i < d.size(); ++i) {
        f.sources.push_back(static_cast<SourceIndex>(i));
        f.deadlines.push_back(d.deadline(static_cast<SourceIndex>(i)));
    }
    return f;
}

} // namespace

IntervalAssignment IntervalAssignment::from_intervals(std::vector<Rational> intervals) {
    if (intervals.empty()) throw InvalidInput("interval assignment: no intervals");
    if (!is_consecutively_divisible(intervals))
        throw InvalidInput("interval assignment: intervals are not consecutively divisible");
    IntervalAssignment out;
    out.expansion = intervals.front().den();
    out.intervals = std::move(intervals);
    return out;
}

Rational IntervalAssignment::load() const {
    Rational sum;
    for (const auto& l : intervals) sum += l.reciprocal();
    return sum;
}

CyclicSchedule gd(const AoiConstraints& d) {
    if (d.empty()) throw InvalidInput("gd: empty constraint set");
    ScheduleBuilder builder;
    SourceIndex src = 0;
    for (const auto& [value, count] : d.summary()) {
        const std::int64_t c = (count + value - 1) / value;
        const ChannelIndex first = builder.num_channels();
        builder.reserve_channels(first + static_cast<ChannelIndex>(c));
        for (std::int64_t r = 0; r < count; ++r, ++src)
            builder.assign({first + static_cast<ChannelIndex>(r % c), r / c, value}, src);
    }
    auto schedule = builder.build();
    detail::require_feasible(schedule, d, "gd");
    return schedule;
}

CyclicSchedule hs(const AoiConstraints& d) {
    if (!is_harmonic(d)) throw InvalidInput("hs: constraints are not harmonic");
    ScheduleBuilder builder;
    detail::schedule_family(whole_family(d, d.summary().front().value), builder);
    auto schedule = builder.build();
    detail::require_feasible(schedule, d, "hs");
    return schedule;
}

CyclicSchedule stv(std::int64_t u1, std::int64_t o1, std::int64_t u2, std::int64_t o2) {
    const auto seqs = detail::stv_sequences(u1, o1, u2, o2, 0);
    ScheduleBuilder builder;
    builder.reserve_channels(static_cast<ChannelIndex>((Rational(o1, u1) + Rational(o2, u2)).num()));
    for (std::size_t r = 0; r < seqs.size(); ++r) builder.assign(seqs[r], static_cast<SourceIndex>(r));
    auto schedule = builder.build();
    std::vector<std::int64_t> deadlines(static_cast<std::size_t>(o1), u1);
    deadlines.insert(deadlines.end(), static_cast<std::size_t>(o2), u2);
    detail::require_feasible(schedule, AoiConstraints(std::move(deadlines)), "stv");
    return schedule;
}

AoiConstraints concat(const AoiConstraints& d1, const AoiConstraints& d2) {
    // Original input order: d1's canonical order, then d2's.
    std::vector<std::int64_t> deadlines;
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < d1.size(); ++i) {
        deadlines.push_back(d1.deadline(static_cast<SourceIndex>(i)));
        ids.push_back(d1.id(static_cast<SourceIndex>(i)));
    }
    for (std::size_t i = 0; i < d2.size(); ++i) {
        deadlines.push_back(d2.deadline(static_cast<SourceIndex>(i)));
        std::string id = d2.id(static_cast<SourceIndex>(i));
        if (std::find(ids.begin(), ids.end(), id) != ids.end()) id = "b:" + id;
        ids.push_back(std::move(id));
    }
    return AoiConstraints(std::move(deadlines), std::move(ids));
}

CyclicSchedule harmonic_pair(const AoiConstraints& d1, const AoiConstraints& d2) {
    if (d1.empty() || d2.empty()) throw InvalidInput("harmonic_pair: both inputs must be non-empty");
    const AoiConstraints merged = concat(d1, d2);
    // Index of d1[i] / d2[i] inside `merged`.
    std::vector<SourceIndex> pos1(d1.size());
    std::vector<SourceIndex> pos2(d2.size());
    for (std::size_t m = 0; m < merged.size(); ++m) {
        const std::size_t p = merged.input_position(static_cast<SourceIndex>(m));
        if (p < d1.size())
            pos1[p] = static_cast<SourceIndex>(m);
        else
            pos2[p - d1.size()] = static_cast<SourceIndex>(m);
    }
    auto family = [](const AoiConstraints& d, const std::vector<SourceIndex>& pos) {
        detail::HarmonicFamily f;
        f.base = d.summary().front().value;
        f.sources = pos;
        f.deadlines.assign(d.deadlines().begin(), d.deadlines().end());
        return f;
    };
    detail::HarmonicFamily f1 = family(d1, pos1);
    detail::HarmonicFamily f2 = family(d2, pos2);
    if (!detail::is_harmonic_family(f1) || !detail::is_harmonic_family(f2))
        throw InvalidInput("harmonic_pair: each input must be harmonic (or single-valued)");
    const Rational load = f1.load() + f2.load();
    if (!load.is_integer()) throw InvalidInput("harmonic_pair: combined load " + load.str() + " is not an integer");

    ScheduleBuilder builder;
    if (f1.base == f2.base) {
        detail::HarmonicFamily both = whole_family(merged, f1.base);
        detail::schedule_family(both, builder);
    } else {
        if (f1.base > f2.base) std::swap(f1, f2);
        detail::schedule_family_pair(f1, f2, builder);
    }
    auto schedule = builder.build();
    detail::require_feasible(schedule, merged, "harmonic_pair");
    return schedule;
}

CyclicSchedule cas(const AoiConstraints& d) {
    if (d.empty()) throw InvalidInput("cas: empty constraint set");
    if (!is_consecutively_divisible(d.deadlines()))
        throw InvalidInput("cas: deadlines are not consecutively divisible");
    const std::int64_t k_total = lower_bound(d);
    const std::int64_t cycle = d.deadlines().back();
    std::vector<char> used(static_cast<std::size_t>(k_total * cycle), 0);
    auto cell = [&](std::int64_t k, std::int64_t t) -> char& { return used[static_cast<std::size_t>(k * cycle + t)]; };

    ScheduleBuilder builder;
    builder.reserve_channels(static_cast<ChannelIndex>(k_total));
    for (std::size_t n = 0; n < d.size(); ++n) {
        const std::int64_t dn = d.deadline(static_cast<SourceIndex>(n));
        bool placed = false;
        for (std::int64_t t = 0; t < dn && !placed; ++t) {
            for (std::int64_t k = 0; k < k_total && !placed; ++k) {
                if (cell(k, t)) continue;
                for (std::int64_t s = t; s < cycle; s += dn) cell(k, s) = 1;
                builder.assign({static_cast<ChannelIndex>(k), t, dn}, static_cast<SourceIndex>(n));
                placed = true;
            }
        }
        if (!placed) throw InternalError("cas: no free resource block for source " + d.id(static_cast<SourceIndex>(n)));
    }
    auto schedule = builder.build();
    detail::require_feasible(schedule, d, "cas");
    return schedule;
}

} // namespace aoisched
