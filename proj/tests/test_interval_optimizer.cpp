#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <aoisched/constraints.hpp>
#include <aoisched/errors.hpp>
#include <aoisched/interval_optimizer.hpp>
#include <aoisched/verify.hpp>

#include <gtest/gtest.h>

#include <functional>
#include <numeric>

using namespace aoisched;

namespace {

std::vector<Rational> rationals(std::initializer_list<std::int64_t> xs) { return {xs.begin(), xs.end()}; }

Rational load_of(const std::vector<Rational>& l) {
    return std::accumulate(l.begin(), l.end(), Rational(0), [](Rational s, const Rational& x) { return s + x.reciprocal(); });
}

} // namespace

TEST(SolveChain, WorkedExample) {
    AoiConstraints d({3, 5, 5, 5, 6, 6, 6, 7, 7, 7});
    auto sol = solve_chain(d);
    std::vector<Rational> want{Rational(5, 2), 5, 5, 5, 5, 5, 5, 5, 5, 5};
    EXPECT_EQ(sol.intervals.intervals, want);
    EXPECT_EQ(sol.channels, 3);
    EXPECT_EQ(sol.base, Rational(5, 2));
    EXPECT_EQ(sol.total_load, Rational(11, 5));
}

TEST(SolveChain, AlreadyAChain) {
    auto sol = solve_chain(AoiConstraints({2, 4, 8}));
    EXPECT_EQ(sol.intervals.intervals, rationals({2, 4, 8}));
    EXPECT_EQ(sol.channels, 1);
    EXPECT_EQ(sol.total_load, Rational(7, 8));
}

TEST(SolveChain, NeedsFractionalBase) {
    auto sol = solve_chain(AoiConstraints({2, 3, 6}));
    EXPECT_EQ(sol.channels, 2);
    EXPECT_EQ(sol.total_load, Rational(7, 6));
    // [3/2, 3, 6] has the same load; the tie goes to the larger sequence.
    EXPECT_EQ(sol.intervals.intervals, rationals({2, 2, 6}));
}

TEST(SolveChain, RejectsEmpty) { EXPECT_THROW((void)solve_chain(AoiConstraints{}), InvalidInput); }

TEST(SolveChain, MatchesPerSourceEnumeration) {
    // Every multiset with N <= 4 and d_n in [1, 10].
    int checked = 0;
    std::vector<std::int64_t> d;
    std::function<void(std::int64_t)> grow = [&](std::int64_t lo) {
        if (!d.empty()) {
            auto sol = solve_chain(AoiConstraints(d));
            oracle::Frac best = oracle::min_chain_load(d);
            ASSERT_EQ(sol.total_load, Rational(best.n, best.d)) << ::testing::PrintToString(d);
            ASSERT_EQ(sol.channels, best.ceil());
            ++checked;
        }
        if (d.size() == 4) return;
        for (std::int64_t x = lo; x <= 10; ++x) {
            d.push_back(x);
            grow(x);
            d.pop_back();
        }
    };
    grow(1);
    EXPECT_EQ(checked, 1000);
}

TEST(SolveChain, InvariantsOnRandomInstances) {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 3000; ++it) {
        auto dv = gen::uniform(rng, 30, 20);
        AoiConstraints d(dv);
        auto sol = solve_chain(d);
        const auto& l = sol.intervals.intervals;
        ASSERT_EQ(l.size(), d.size());
        ASSERT_TRUE(is_consecutively_divisible(l));
        for (std::size_t i = 0; i < l.size(); ++i) {
            ASSERT_GE(l[i], Rational(1));
            ASSERT_LE(l[i], Rational(d.deadline(static_cast<SourceIndex>(i))));
        }
        ASSERT_EQ(l[sol.witness_index], Rational(d.deadline(static_cast<SourceIndex>(sol.witness_index))));
        ASSERT_EQ(sol.total_load, load_of(l));
        ASSERT_EQ(sol.channels, sol.total_load.ceil());
        ASSERT_GE(sol.channels, lower_bound(d));
    }
}

TEST(SolveChain, EqualsLowerBoundOnChains) {
    std::mt19937_64 rng(32);
    for (int it = 0; it < 2000; ++it) {
        AoiConstraints d(gen::integer_chain(rng, 30, 20));
        ASSERT_EQ(solve_chain(d).channels, lower_bound(d));
    }
}

TEST(UnusedPart, Examples) {
    EXPECT_EQ(unused_part(rationals({3, 6, 6, 6, 6, 6, 6})), Rational(2, 3));
    EXPECT_EQ(unused_part(rationals({5, 5, 5, 5, 5})), Rational(0));
    EXPECT_EQ(unused_part(rationals({2})), Rational(1, 2));
}

TEST(ScheduleFromChain, Examples) {
    AoiConstraints ex({3, 5, 5, 5, 6, 6, 6, 7, 7, 7});
    auto s1 = schedule_from_chain(solve_chain(ex), ex);
    EXPECT_EQ(s1.num_channels(), 3);
    EXPECT_TRUE(verify(s1, ex).feasible);

    AoiConstraints chain({2, 4, 8});
    auto s2 = schedule_from_chain(solve_chain(chain), chain);
    EXPECT_EQ(s2.num_channels(), 1);
    EXPECT_TRUE(verify(s2, chain).feasible);

    AoiConstraints single({7});
    auto s3 = schedule_from_chain(solve_chain(single), single);
    EXPECT_EQ(s3.num_channels(), 1);
    EXPECT_EQ(oracle::gaps(s3, 1)[0], 7);
}

TEST(ScheduleFromChain, VerifiesOnRandomInstances) {
    std::mt19937_64 rng(34);
    for (int it = 0; it < 2000; ++it) {
        auto dv = gen::uniform(rng, 30, 20);
        AoiConstraints d(dv);
        auto sol = solve_chain(d);
        auto s = schedule_from_chain(sol, d);
        ASSERT_EQ(s.num_channels(), sol.channels);
        ASSERT_TRUE(oracle::feasible(s, {d.deadlines().begin(), d.deadlines().end()}));
    }
}
