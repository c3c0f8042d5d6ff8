#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <map>

#include "fixtures.hpp"
#include "sslab/enumerate.hpp"
#include "sslab/random_markets.hpp"
#include "sslab/ttc.hpp"

namespace sslab {
namespace {

TEST(SplitMix, ReferenceOutputs) {
  SplitMix64 rng(0);
  EXPECT_EQ(rng(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(rng(), 0x06C45D188009454FULL);
}

TEST(SplitMix, DerivedSeedsDifferAndRepeat) {
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
  EXPECT_NE(derive_seed(7, 3), derive_seed(7, 4));
  EXPECT_NE(derive_seed(7, 3), derive_seed(8, 3));
}

TEST(UniformBelow, StaysInRangeAndIsFlat) {
  SplitMix64 rng(42);
  std::array<int, 7> counts{};
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) ++counts[uniform_below(rng, 7)];
  double chi2 = 0;
  for (int c : counts) chi2 += (c - 10000.0) * (c - 10000.0) / 10000.0;
  // 6 degrees of freedom; 0.999 quantile is 22.46.
  EXPECT_LT(chi2, 22.46);
  EXPECT_THROW(uniform_below(rng, 0), std::invalid_argument);
}

TEST(Shuffle, AllPermutationsEquallyLikely) {
  SplitMix64 rng(5);
  std::map<std::vector<AgentIndex>, int> counts;
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) {
    std::vector<AgentIndex> v{0, 1, 2};
    shuffle(v, rng);
    ++counts[v];
  }
  ASSERT_EQ(counts.size(), 6u);
  double chi2 = 0;
  for (const auto& [perm, c] : counts) chi2 += (c - 10000.0) * (c - 10000.0) / 10000.0;
  // 5 degrees of freedom; 0.999 quantile is 20.52.
  EXPECT_LT(chi2, 20.52);
}

TEST(SampleEhm, SameSeedSameMarket) {
  const std::vector<std::size_t> sizes{3, 4};
  EXPECT_EQ(sample_ehm(sizes, 11).market(), sample_ehm(sizes, 11).market());
  EXPECT_FALSE(sample_ehm(sizes, 11).market() == sample_ehm(sizes, 12).market());
  const auto ehm = sample_ehm(sizes, 11);
  EXPECT_EQ(ehm.community(1)[0], 3);
}

TEST(SampleEhm, RowsAreUniformPermutations) {
  // Frequency of each (position, house) cell over many markets.
  const std::vector<std::size_t> sizes{2, 2};
  std::array<std::array<int, 4>, 4> cell{};
  const int markets = 20000;
  for (int s = 0; s < markets; ++s) {
    const auto ehm = sample_ehm(sizes, static_cast<std::uint64_t>(s));
    const auto row = ehm.market().preferences(1);
    for (std::size_t p = 0; p < 4; ++p) ++cell[p][row[p]];
  }
  for (const auto& pos : cell) {
    for (int c : pos) EXPECT_NEAR(c / static_cast<double>(markets), 0.25, 0.015);
  }
}

TEST(SampleEhm, RejectsEmptySizes) {
  EXPECT_THROW(sample_ehm(std::vector<std::size_t>{}, 1), InputError);
  EXPECT_THROW(sample_ehm(std::vector<std::size_t>{2, 0}, 1), InputError);
}

TEST(Harmonic, ExactSmallValues) {
  EXPECT_EQ(harmonic_exact(1), BigRational(1));
  EXPECT_EQ(harmonic_exact(3), BigRational(11, 6));
  EXPECT_EQ(harmonic_exact(10), BigRational(7381, 2520));
  EXPECT_NEAR(harmonic(10), 7381.0 / 2520.0, 1e-15);
  EXPECT_NEAR(harmonic(1000), static_cast<double>(harmonic_exact(1000)), 1e-12);
  EXPECT_THROW(harmonic_exact(0), std::invalid_argument);
}

// Sum of core ranks over every profile of n agents.
std::uint64_t total_rank_sum(std::size_t n, std::uint64_t& profiles) {
  std::uint64_t total = 0;
  profiles = 0;
  for_each_profile(n, [&](const auto& rows) {
    const HousingMarket m(default_agent_names(n), rows);
    const auto x = ttc_solve(m).allocation;
    for (std::size_t i = 0; i < n; ++i) {
      total += static_cast<std::uint64_t>(m.rank(static_cast<AgentIndex>(i), x[i]));
    }
    ++profiles;
  });
  return total;
}

TEST(ExpectedRankSum, MatchesEnumeration) {
  std::uint64_t profiles = 0;
  EXPECT_EQ(total_rank_sum(2, profiles), 10u);
  EXPECT_EQ(profiles, 4u);
  EXPECT_DOUBLE_EQ(expected_rank_sum(2), 2.5);
  // (4 * 11/6 - 3) * 216 = 936
  EXPECT_EQ(total_rank_sum(3, profiles), 936u);
  EXPECT_NEAR(expected_rank_sum(3), 936.0 / 216.0, 1e-12);
}

TEST(ExpectedGain, MatchesEnumerationForMixedSizes) {
  // Communities {a} and {b, c}; average the per-agent gain over all 216 profiles.
  const auto names = default_agent_names(3);
  double gain_small = 0, gain_pair = 0;
  std::size_t profiles = 0;
  for_each_profile(3, [&](const auto& rows) {
    const ExtendedHousingMarket ehm(HousingMarket(names, rows), {{0}, {1, 2}});
    const auto r = analyze(ehm, solve_scheme(ehm));
    gain_small += r.gain[0];
    gain_pair += (r.gain[1] + r.gain[2]) / 2.0;
    ++profiles;
  });
  EXPECT_NEAR(expected_gain(3, 1).rank_units, gain_small / profiles, 1e-12);
  EXPECT_NEAR(expected_gain(3, 2).rank_units, gain_pair / profiles, 1e-12);
  EXPECT_NEAR(expected_gain(3, 1).percentile, gain_small / profiles / 3.0, 1e-12);
}

TEST(ExpectedGain, ThreeCommunityExampleValues) {
  EXPECT_NEAR(expected_gain(100, 60).rank_units, 1.98, 0.005);
  EXPECT_NEAR(expected_gain(100, 30).rank_units, 5.95, 0.005);
  EXPECT_NEAR(expected_gain(100, 10).rank_units, 16.16, 0.005);
  EXPECT_EQ(expected_gain(50, 50).rank_units, 0.0);
  EXPECT_THROW(expected_gain(5, 6), std::invalid_argument);
}

TEST(HarmedBound, FormulaValues) {
  EXPECT_NEAR(harmed_bound(60), 60 - std::sqrt(120 * M_PI), 1e-12);
  EXPECT_NEAR(harmed_bound(60), 40.58, 0.01);
  EXPECT_NEAR(harmed_bound(30), 16.27, 0.01);
  EXPECT_NEAR(harmed_bound(10), 2.07, 0.01);
  const std::vector<std::size_t> sizes{60, 30, 10};
  EXPECT_NEAR(harmed_bound_total(sizes), harmed_bound(60) + harmed_bound(30) + harmed_bound(10),
              1e-12);
  EXPECT_NEAR(half_harm_threshold(), 25.13, 0.005);
  // Below the threshold the bound is under half the community.
  EXPECT_LT(harmed_bound(25), 12.5);
  EXPECT_GT(harmed_bound(26), 13.0);
}

TEST(Rsd, SerialDictatorshipPicksInOrder) {
  const auto m = testing::letters({"abc", "acb", "abc"});
  const std::vector<AgentIndex> order{2, 0, 1};
  EXPECT_EQ(rsd_allocation(m, order), testing::houses("bca"));
  EXPECT_THROW(rsd_allocation(m, std::vector<AgentIndex>{0, 0, 1}), std::invalid_argument);
}

TEST(Rsd, EquivalentOnEveryThreeAgentProfile) {
  for_each_profile(3, [](const auto& rows) {
    EXPECT_TRUE(rsd_equivalence_check(HousingMarket(default_agent_names(3), rows)));
  });
}

TEST(Rsd, DistributionsHaveFactorialMass) {
  const auto m = testing::load_market("example1.json");
  const auto d = rsd_distribution(m);
  std::uint64_t total = 0;
  for (const auto& [alloc, count] : d) total += count;
  EXPECT_EQ(total, 5040u);
  EXPECT_EQ(d, ttc_random_endowment_distribution(m));
}

}  // namespace
}  // namespace sslab
