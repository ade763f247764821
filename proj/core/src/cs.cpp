#include "aoisched/errors.hpp"
#include "aoisched/interval_optimizer.hpp"
#include "aoisched/schedulers.hpp"
#include "aoisched/verify.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>

namespace aoisched {

namespace {

// Attempts whose expanded grid would exceed this many slots are skipped.
constexpr std::int64_t kMaxExpandedSlots = std::int64_t{1} << 22;

// Expanded grid of a * l_N (or a^2 * l_N) slots on ceil(K / a) channels,
// merged a slots at a time. Each merged slot may hold at most K sources.
// Returns nullopt if some source finds no offset that respects that.
std::optional<CyclicSchedule> expand_and_merge(std::span<const Rational> l, std::int64_t k_total) {
    const std::int64_t a = l.front().den();
    const Rational last = l.back() * Rational(a);
    if (last > Rational(kMaxExpandedSlots / a)) return std::nullopt;
    const std::int64_t k_expanded = (k_total + a - 1) / a;
    std::vector<std::int64_t> stride(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) stride[i] = (l[i] * Rational(a)).num();
    const std::int64_t cycle_expanded = l.back().is_integer() ? stride.back() : a * stride.back();
    const std::int64_t groups = cycle_expanded / a;

    std::vector<std::int64_t> budget(static_cast<std::size_t>(groups), k_total);
    std::vector<std::int64_t> occupancy(static_cast<std::size_t>(cycle_expanded), 0);
    std::vector<std::vector<SourceIndex>> expanded(static_cast<std::size_t>(cycle_expanded));

    // Smallest remaining merged-slot budget over the blocks of a stride-s
    // sequence starting at t, or -1 if an expanded slot is out of cells.
    auto headroom = [&](std::int64_t t, std::int64_t s, bool need_cell) {
        std::int64_t least = k_total;
        for (std::int64_t x = t; x < cycle_expanded; x += s) {
            if (need_cell && occupancy[static_cast<std::size_t>(x)] >= k_expanded) return std::int64_t{-1};
            least = std::min(least, budget[static_cast<std::size_t>(x / a)]);
        }
        return least;
    };

    for (std::size_t i = 0; i < l.size(); ++i) {
        const std::int64_t s = stride[i];
        const std::int64_t window = std::min(l[i].ceil(), groups);
        // First group with the largest remaining budget.
        std::int64_t p = 0;
        for (std::int64_t g = 1; g < window; ++g)
            if (budget[static_cast<std::size_t>(g)] > budget[static_cast<std::size_t>(p)]) p = g;
        // Slots of group p usable as the first block, least occupied first.
        std::vector<std::int64_t> slots;
        for (std::int64_t t = p * a; t < std::min((p + 1) * a, s); ++t) slots.push_back(t);
        std::stable_sort(slots.begin(), slots.end(), [&](std::int64_t x, std::int64_t y) {
            return occupancy[static_cast<std::size_t>(x)] < occupancy[static_cast<std::size_t>(y)];
        });
        std::optional<std::int64_t> chosen;
        for (std::int64_t t : slots) {
            if (headroom(t, s, true) >= 1) {
                chosen = t;
                break;
            }
        }
        // A later block of the sequence can fall into a merged slot that is
        // already full. Widen the search to every offset, most headroom first.
        if (!chosen) {
            std::int64_t best = 0;
            for (std::int64_t t = 0; t < s; ++t) {
                const std::int64_t room = headroom(t, s, false);
                if (room > best) {
                    best = room;
                    chosen = t;
                }
            }
        }
        if (!chosen) return std::nullopt;
        for (std::int64_t x = *chosen; x < cycle_expanded; x += s) {
            expanded[static_cast<std::size_t>(x)].push_back(static_cast<SourceIndex>(i));
            ++occupancy[static_cast<std::size_t>(x)];
            --budget[static_cast<std::size_t>(x / a)];
        }
    }

    // Within a merged slot the lower source index takes the lower channel.
    ScheduleBuilder builder;
    builder.reserve_channels(static_cast<ChannelIndex>(k_total));
    std::vector<SourceIndex> members;
    for (std::int64_t g = 0; g < groups; ++g) {
        members.clear();
        for (std::int64_t t = g * a; t < (g + 1) * a; ++t)
            members.insert(members.end(), expanded[static_cast<std::size_t>(t)].begin(),
                           expanded[static_cast<std::size_t>(t)].end());
        std::sort(members.begin(), members.end());
        for (std::size_t c = 0; c < members.size(); ++c)
            builder.assign({static_cast<ChannelIndex>(c), g, groups}, members[c]);
    }
    return builder.build();
}

// Reads a one-channel schedule as K channels: cell z goes to slot z / K,
// channel z % K. Intervals scaled by K on the line come back as intervals
// whose ceilings are no larger than the originals.
CyclicSchedule fold_line(const CyclicSchedule& line, std::int64_t channels) {
    const std::int64_t length = std::lcm(line.cycle_length(), channels);
    const std::int64_t cycle = length / channels;
    CyclicSchedule out;
    for (std::int64_t k = 0; k < channels; ++k) out.add_channel(cycle);
    for (std::int64_t z = 0; z < length; ++z) {
        const SourceIndex s = line.at(0, z);
        if (s == CyclicSchedule::kIdle) continue;
        const std::int64_t t = z / channels;
        bool repeat = false;
        for (ChannelIndex k = 0; k < channels && !repeat; ++k) repeat = out.at(k, t) == s;
        if (!repeat) out.place(static_cast<ChannelIndex>(z % channels), t, s);
    }
    return out;
}

std::vector<Rational> expand(std::span<const DistinctValue> values, const detail::BaseChain& chain,
                             const Rational& scale) {
    std::vector<Rational> out;
    for (std::size_t j = 0; j < values.size(); ++j)
        out.insert(out.end(), static_cast<std::size_t>(values[j].count),
                   chain.base * Rational(chain.multipliers[j]) * scale);
    return out;
}

class Attempts {
public:
    Attempts(const AoiConstraints& ceilings, std::int64_t channels) : ceilings_(ceilings), channels_(channels) {}

    // Chain on the real grid.
    bool grid(std::span<const Rational> l) {
        return accept(expand_and_merge(l, channels_));
    }

    // Chain scaled by K on a single line, then folded onto K channels.
    bool line(std::span<const Rational> l) {
        if (l.back() > Rational(kMaxExpandedSlots / channels_)) return false;
        std::vector<Rational> scaled(l.begin(), l.end());
        for (auto& x : scaled) x = x * Rational(channels_);
        auto one = expand_and_merge(scaled, 1);
        if (!one) return false;
        return accept(fold_line(*one, channels_));
    }

    [[nodiscard]] const std::optional<CyclicSchedule>& result() const { return result_; }

private:
    bool accept(std::optional<CyclicSchedule> s) {
        if (!s || s->num_channels() != channels_ || !verify(*s, ceilings_).feasible) return false;
        result_ = std::move(s);
        return true;
    }

    const AoiConstraints& ceilings_;
    std::int64_t channels_;
    std::optional<CyclicSchedule> result_;
};

} // namespace

CyclicSchedule cs(const IntervalAssignment& assignment) {
    const auto& l = assignment.intervals;
    if (l.empty()) throw InvalidInput("cs: no intervals");
    if (!is_consecutively_divisible(l)) throw InvalidInput("cs: intervals are not consecutively divisible");
    if (assignment.expansion != l.front().den()) throw InvalidInput("cs: expansion factor does not match l_1");

    const std::int64_t k_total = assignment.channels();
    std::vector<std::int64_t> ceilings;
    for (const auto& x : l) ceilings.push_back(x.ceil());
    const AoiConstraints bound(ceilings);
    Attempts attempt(bound, k_total);

    if (attempt.grid(l) || attempt.line(l)) return *attempt.result();

    // Any other chain under the same ceilings that fits in K channels will
    // do. Try them from the lightest load.
    const auto values = bound.summary();
    std::vector<detail::BaseChain> chains;
    for (const auto& b : detail::candidate_bases(values)) {
        auto c = detail::chain_for_base(values, b);
        if (c.load.ceil() <= k_total) chains.push_back(std::move(c));
    }
    std::stable_sort(chains.begin(), chains.end(),
                     [](const detail::BaseChain& x, const detail::BaseChain& y) { return x.load < y.load; });
    for (const auto& c : chains) {
        const auto alt = expand(values, c, Rational(1));
        if (attempt.grid(alt) || attempt.line(alt)) return *attempt.result();
    }

    // Integer chains on the K-cell line: each source needs a line interval
    // of at most K * ceil(l_n) and the whole line at most unit load.
    std::vector<DistinctValue> scaled(values.begin(), values.end());
    for (auto& v : scaled) v.value *= k_total;
    for (std::int64_t b = k_total; b <= scaled.front().value; ++b) {
        auto c = detail::chain_for_base(scaled, Rational(b));
        if (c.load > Rational(1)) continue;
        if (attempt.line(expand(scaled, c, Rational(1, k_total)))) return *attempt.result();
    }

    throw InternalError("cs: no construction found for " + std::to_string(l.size()) + " sources on " +
                        std::to_string(k_total) + " channels");
}

} // namespace aoisched
