#include <gtest/gtest.h>

#include <cmath>

#include "sslab/io.hpp"
#include "sslab/random_markets.hpp"
#include "sslab/simulation.hpp"

namespace sslab {
namespace {

TEST(Moments, MeanSdSe) {
  const auto m = moments({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  ASSERT_TRUE(m.sd.has_value());
  EXPECT_NEAR(*m.sd, std::sqrt(5.0 / 3.0), 1e-12);
  EXPECT_NEAR(*m.se, std::sqrt(5.0 / 3.0) / 2.0, 1e-12);
}

TEST(Moments, SingleObservationHasNoSpread) {
  const auto m = moments({7.0});
  EXPECT_DOUBLE_EQ(m.mean, 7.0);
  EXPECT_FALSE(m.sd.has_value());
  EXPECT_FALSE(m.se.has_value());
}

TEST(Simulation, RejectsBadConfigs) {
  EXPECT_THROW(run_simulation({{5, 5}, 0, 1, 1}), InputError);
  EXPECT_THROW(run_simulation({{}, 10, 1, 1}), InputError);
  EXPECT_THROW(run_simulation({{5, 0}, 10, 1, 1}), InputError);
}

TEST(Simulation, TrialSeedRule) {
  EXPECT_EQ(trial_seed(9, 4), derive_seed(9, 4));
}

TEST(Simulation, IdenticalAcrossThreadCounts) {
  const auto one = summary_json(run_simulation({{6, 4, 3}, 300, 77, 1}));
  const auto four = summary_json(run_simulation({{6, 4, 3}, 300, 77, 4}));
  const auto all = summary_json(run_simulation({{6, 4, 3}, 300, 77, 0}));
  EXPECT_EQ(one.dump(), four.dump());
  EXPECT_EQ(one.dump(), all.dump());
}

TEST(Simulation, SingleTrialFlagsUndefinedSpread) {
  const auto s = run_simulation({{3, 3}, 1, 5, 1});
  EXPECT_FALSE(s.communities[0].gain_ranks.sd.has_value());
  const auto doc = summary_json(s);
  EXPECT_TRUE(doc["communities"][0]["gain_ranks"]["sd"].is_null());
  EXPECT_NE(summary_csv(s).find(",,"), std::string::npos);
}

TEST(Simulation, ThreeCommunityMeansNearExactFormula) {
  const auto s = run_simulation({{60, 30, 10}, 1000, 2024, 0});
  EXPECT_EQ(s.cycle_bound_violations, 0u);
  const std::size_t sizes[] = {60, 30, 10};
  for (std::size_t j = 0; j < 3; ++j) {
    const auto& g = s.communities[j].gain_ranks;
    EXPECT_NEAR(g.mean, expected_gain(100, sizes[j]).rank_units, 3.0 * *g.se) << "j = " << j;
  }
}

TEST(Simulation, RankSumNearKnuthFormula) {
  const auto s = run_simulation({{20}, 4000, 3, 0});
  EXPECT_NEAR(s.integrated_rank_sum.mean, expected_rank_sum(20),
              3.0 * *s.integrated_rank_sum.se);
}

TEST(Simulation, SmallEqualCommunitiesHarmUnderHalf) {
  const auto s = run_simulation({{20, 20, 20}, 500, 8, 0});
  EXPECT_LT(s.fraction_harmed.mean, 0.5);
  EXPECT_NEAR(s.fraction_benefited.mean + s.fraction_harmed.mean + s.fraction_unaffected.mean,
              1.0, 1e-9);
}

}  // namespace
}  // namespace sslab
