#include "aoisched/interval_optimizer.hpp"

#include "aoisched/errors.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <utility>

namespace aoisched {

namespace {

using BaseResult = detail::BaseChain;

// Lexicographic comparison of the expanded interval sequences base*m_j.
// Equal-valued sources share an interval, so comparing per distinct value
// gives the same order as comparing per source.
int compare_sequences(const BaseResult& x, const BaseResult& y) {
    for (std::size_t j = 0; j < x.multipliers.size(); ++j) {
        const Rational lx = x.base * Rational(x.multipliers[j]);
        const Rational ly = y.base * Rational(y.multipliers[j]);
        if (lx != ly) return lx < ly ? -1 : 1;
    }
    return 0;
}

bool better(const BaseResult& x, const BaseResult& y) {
    if (x.load != y.load) return x.load < y.load;
    const int c = compare_sequences(x, y);
    if (c != 0) return c > 0;
    return x.base < y.base;
}

} // namespace

namespace detail {

namespace {

// Divisor-chain DP over distinct values. Cost is anything that adds and
// compares exactly; term(j, m) is value j's contribution o_j / m (scaled).
template <typename Cost, typename Term>
std::pair<Cost, std::vector<std::int64_t>> divisor_chain_dp(const std::vector<std::int64_t>& cap, Term term) {
    const std::size_t v = cap.size();
    // cost[j][m]: min sum_{i >= j} term(i, m_i) given m_j = m. choice[j][m]:
    // the largest optimal m_{j+1}.
    std::vector<std::vector<Cost>> cost(v);
    std::vector<std::vector<std::int64_t>> choice(v);
    for (std::size_t jj = v; jj-- > 0;) {
        const auto limit = static_cast<std::size_t>(cap[jj]);
        cost[jj].assign(limit + 1, Cost());
        choice[jj].assign(limit + 1, 0);
        for (std::int64_t m = 1; m <= cap[jj]; ++m) {
            Cost here = term(jj, m);
            if (jj + 1 < v) {
                const auto& next_cost = cost[jj + 1];
                std::int64_t arg = m;
                for (std::int64_t next = 2 * m; next <= cap[jj + 1]; next += m)
                    if (next_cost[static_cast<std::size_t>(next)] <= next_cost[static_cast<std::size_t>(arg)]) arg = next;
                here += next_cost[static_cast<std::size_t>(arg)];
                choice[jj][static_cast<std::size_t>(m)] = arg;
            }
            cost[jj][static_cast<std::size_t>(m)] = here;
        }
    }
    std::vector<std::int64_t> multipliers(v);
    std::int64_t m = 1;
    for (std::size_t j = 0; j < v; ++j) {
        multipliers[j] = m;
        if (j + 1 < v) m = choice[j][static_cast<std::size_t>(m)];
    }
    return {cost[0][1], std::move(multipliers)};
}

// lcm(1..n) when lcm * factor fits in 63 bits.
std::optional<std::int64_t> scale_for(std::int64_t n, std::int64_t factor) {
    std::int64_t l = 1;
    for (std::int64_t k = 2; k <= n; ++k) {
        const std::int64_t g = std::gcd(l, k);
        if (__builtin_mul_overflow(l / g, k, &l)) return std::nullopt;
    }
    std::int64_t probe = 0;
    if (__builtin_mul_overflow(l, factor, &probe)) return std::nullopt;
    return l;
}

} // namespace

BaseChain chain_for_base(std::span<const DistinctValue> values, const Rational& base) {
    if (values.empty() || base < Rational(1) || base > Rational(values.front().value))
        throw InvalidInput("chain_for_base: base must lie in [1, u_1]");
    const std::size_t v = values.size();
    std::vector<std::int64_t> cap(v);
    for (std::size_t j = 0; j < v; ++j) cap[j] = (Rational(values[j].value) / base).floor();

    BaseResult out;
    out.base = base;
    std::int64_t sources = 0;
    for (const auto& dv : values) sources += dv.count;
    // With every multiplier dividing L = lcm(1..max cap), o_j / m_j scaled by
    // L is an integer and the whole DP runs in exact integer arithmetic.
    const std::int64_t max_cap = *std::max_element(cap.begin(), cap.end());
    if (auto scale = scale_for(max_cap, sources)) {
        const std::int64_t l = *scale;
        auto [cost, mult] = divisor_chain_dp<std::int64_t>(cap, [&](std::size_t j, std::int64_t m) {
            return values[j].count * (l / m);
        });
        out.multipliers = std::move(mult);
        out.load = Rational(cost, l) / base;
    } else {
        auto [cost, mult] = divisor_chain_dp<Rational>(cap, [&](std::size_t j, std::int64_t m) {
            return Rational(values[j].count, m);
        });
        out.multipliers = std::move(mult);
        out.load = cost / base;
    }
    return out;
}

std::vector<Rational> candidate_bases(std::span<const DistinctValue> values) {
    const std::int64_t smallest = values.front().value;
    std::vector<Rational> bases;
    for (const auto& [u, count] : values) {
        for (std::int64_t k = 1; k <= u; ++k) {
            Rational b(u, k);
            if (b <= Rational(smallest)) bases.push_back(b);
        }
    }
    std::sort(bases.begin(), bases.end());
    bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
    return bases;
}

} // namespace detail

ChainSolution solve_chain(const AoiConstraints& d) {
    if (d.empty()) throw InvalidInput("solve_chain: empty constraint set");
    const auto values = d.summary();
    std::optional<BaseResult> best;
    for (const auto& b : detail::candidate_bases(values)) {
        BaseResult r = detail::chain_for_base(values, b);
        if (!best || better(r, *best)) best = std::move(r);
    }

    std::vector<Rational> intervals;
    intervals.reserve(d.size());
    for (std::size_t j = 0; j < values.size(); ++j)
        intervals.insert(intervals.end(), static_cast<std::size_t>(values[j].count),
                         best->base * Rational(best->multipliers[j]));

    ChainSolution sol;
    sol.total_load = best->load;
    sol.channels = best->load.ceil();
    sol.base = best->base;
    sol.witness_index = d.size();
    for (std::size_t n = 0; n < d.size(); ++n) {
        if (intervals[n] == Rational(d.deadline(static_cast<SourceIndex>(n)))) {
            sol.witness_index = n;
            break;
        }
    }
    if (sol.witness_index == d.size()) throw InternalError("solve_chain: optimum has no interval equal to its deadline");
    sol.intervals = IntervalAssignment::from_intervals(std::move(intervals));
    return sol;
}

Rational unused_part(std::span<const Rational> l) {
    Rational sum;
    for (const auto& x : l) {
        if (x < Rational(1)) throw InvalidInput("unused_part: intervals must be at least 1");
        sum += x.reciprocal();
    }
    return Rational(sum.ceil()) - sum;
}

CyclicSchedule schedule_from_chain(const ChainSolution& sol) {
    auto schedule = cs(sol.intervals);
    if (schedule.num_channels() != sol.channels) throw InternalError("schedule_from_chain: channel count mismatch");
    return schedule;
}

CyclicSchedule schedule_from_chain(const ChainSolution& sol, const AoiConstraints& d) {
    if (sol.intervals.intervals.size() != d.size())
        throw InvalidInput("schedule_from_chain: solution and constraints differ in size");
    auto schedule = schedule_from_chain(sol);
    detail::require_feasible(schedule, d, "schedule_from_chain");
    return schedule;
}

} // namespace aoisched
