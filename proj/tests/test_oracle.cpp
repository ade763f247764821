#include "support/oracles.hpp"

#include <aoisched/constraints.hpp>
#include <aoisched/errors.hpp>
#include <aoisched/oracle.hpp>
#include <aoisched/verify.hpp>

#include <gtest/gtest.h>

#include <functional>

using namespace aoisched;

TEST(Oracle, CollidingPeriodsNeedTwoChannels) {
    AoiConstraints d({2, 3, 6});
    EXPECT_EQ(lower_bound(d), 1);
    EXPECT_EQ(optimal_channels(d), 2);
    EXPECT_FALSE(feasible_with(d, 1));
    EXPECT_TRUE(feasible_with(d, 2));
}

TEST(Oracle, SingleSourceEverySlot) { EXPECT_EQ(optimal_channels(AoiConstraints({1})), 1); }

TEST(Oracle, SmallHarmonic) { EXPECT_EQ(optimal_channels(AoiConstraints({2, 4, 4})), 1); }

TEST(Oracle, WitnessForCollidingPeriods) {
    AoiConstraints d({2, 3, 6});
    auto s = extract_witness(d, 2);
    EXPECT_EQ(s.num_channels(), 2);
    EXPECT_TRUE(verify(s, d).feasible);
    EXPECT_THROW((void)extract_witness(d, 1), InvalidInput);
}

TEST(Oracle, WitnessAlternates) {
    AoiConstraints d({2, 2});
    auto s = extract_witness(d, 1);
    EXPECT_EQ(s.cycle_length(), 2);
    EXPECT_NE(s.at(0, 0), s.at(0, 1));
    EXPECT_TRUE(verify(s, d).feasible);
}

TEST(Oracle, WitnessCycleOfFour) {
    AoiConstraints d({2, 4, 4});
    auto s = extract_witness(d, 1);
    EXPECT_EQ(s.cycle_length(), 4);
    EXPECT_TRUE(verify(s, d).feasible);
}

TEST(Oracle, BudgetIsEnforced) {
    AoiConstraints d({20, 20, 20, 20, 20, 20});
    EXPECT_THROW((void)optimal_channels(d, {.state_budget = 1000}), BudgetExceeded);
    EXPECT_THROW((void)optimal_channels(AoiConstraints{}), InvalidInput);
}

TEST(Oracle, MatchesForwardSearchOnSmallInstances) {
    // Every multiset with N <= 4 and d_n in [1, 6].
    std::vector<std::int64_t> d;
    int checked = 0;
    std::function<void(std::int64_t)> grow = [&](std::int64_t lo) {
        if (!d.empty()) {
            AoiConstraints c(d);
            const auto k = optimal_channels(c);
            ASSERT_EQ(k, oracle::min_channels(d)) << ::testing::PrintToString(d);
            ASSERT_GE(k, lower_bound(c));
            auto w = extract_witness(c, k);
            ASSERT_EQ(w.num_channels(), k);
            ASSERT_TRUE(oracle::feasible(w, d));
            ++checked;
        }
        if (d.size() == 4) return;
        for (std::int64_t x = lo; x <= 6; ++x) {
            d.push_back(x);
            grow(x);
            d.pop_back();
        }
    };
    grow(1);
    EXPECT_EQ(checked, 209);
}
