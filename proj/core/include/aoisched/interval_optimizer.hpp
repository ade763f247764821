#pragma once

#include "aoisched/constraints.hpp"
#include "aoisched/rational.hpp"
#include "aoisched/schedule.hpp"
#include "aoisched/schedulers.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace aoisched {

/// Single-chain optimum: consecutively divisible intervals l <= d with the
/// smallest possible sum of 1/l_n.
struct ChainSolution {
    IntervalAssignment intervals;
    Rational total_load;
    std::int64_t channels = 0;
    /// l_1.
    Rational base;
    /// First source whose interval equals its deadline.
    std::size_t witness_index = 0;
};

/// Exact minimiser of sum 1/l_n over consecutively divisible l with
/// 1 <= l_n <= d_n, l ordered like d.
///
/// Some optimal chain has l_i = d_i for at least one i (otherwise the whole
/// chain could be stretched), so l_1 = d_i / k for an integer k. Every such
/// base not above d_1 is tried with a divisor-chain DP over the distinct
/// deadline values: sources sharing a deadline take the same multiplier,
/// value j may use multipliers m <= floor(u_j / base), and each multiplier
/// must divide the next one.
///
/// Ties on load go to the lexicographically largest interval sequence, then
/// to the smaller base.
[[nodiscard]] ChainSolution solve_chain(const AoiConstraints& d);

/// ceil(sum 1/l_n) - sum 1/l_n.
[[nodiscard]] Rational unused_part(std::span<const Rational> l);

/// CS schedule for a chain solution; uses sol.channels channels.
[[nodiscard]] CyclicSchedule schedule_from_chain(const ChainSolution& sol);
/// Same, additionally verified against the deadlines the chain was solved for.
[[nodiscard]] CyclicSchedule schedule_from_chain(const ChainSolution& sol, const AoiConstraints& d);

namespace detail {

/// Chain with l_1 = base over the distinct values of a constraint set.
struct BaseChain {
    Rational base;
    Rational load;
    /// One multiplier per distinct value; interval of value j is base * m_j.
    std::vector<std::int64_t> multipliers;
};

/// Least-load chain with the given base (m_1 = 1, base * m_j <= u_j, each
/// multiplier dividing the next). Requires base <= u_1.
[[nodiscard]] BaseChain chain_for_base(std::span<const DistinctValue> values, const Rational& base);

/// Every base u_j / k not above u_1, ascending and without repeats.
[[nodiscard]] std::vector<Rational> candidate_bases(std::span<const DistinctValue> values);

} // namespace detail

} // namespace aoisched
