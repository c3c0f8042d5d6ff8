#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "sslab/enumerate.hpp"
#include "sslab/oracles.hpp"
#include "sslab/ttc.hpp"

namespace sslab {
namespace {

using testing::houses;
using testing::letters;

RawMarket raw(std::vector<std::string> agents,
              std::vector<std::pair<std::string, std::vector<std::string>>> prefs) {
  return RawMarket{std::move(agents), std::move(prefs)};
}

TEST(ValidateMarket, AcceptsCompleteRows) {
  const auto m = validate_market(raw({"x", "y"}, {{"y", {"x", "y"}}, {"x", {"y", "x"}}}));
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m.rank(0, 1), 1);
  EXPECT_EQ(m.rank(1, 0), 1);
  EXPECT_EQ(m.index_of("y"), AgentIndex{1});
  EXPECT_FALSE(m.index_of("z").has_value());
}

TEST(ValidateMarket, DuplicateHouseNamesPosition) {
  try {
    validate_market(raw({"a", "b", "c"}, {{"a", {"a", "a", "b"}},
                                          {"b", {"a", "b", "c"}},
                                          {"c", {"a", "b", "c"}}}));
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_STREQ(e.what(), "duplicate house a in row of agent a at position 2");
  }
}

TEST(ValidateMarket, RejectsStructuralProblems) {
  EXPECT_THROW(validate_market(raw({}, {})), InputError);
  EXPECT_THROW(validate_market(raw({"a", "a"}, {{"a", {"a", "a"}}})), InputError);
  EXPECT_THROW(validate_market(raw({"a", "b"}, {{"a", {"a", "b"}}})), InputError);
  EXPECT_THROW(validate_market(raw({"a", "b"}, {{"a", {"a", "b"}}, {"a", {"a", "b"}}})),
               InputError);
  EXPECT_THROW(validate_market(raw({"a", "b"}, {{"a", {"a", "b"}}, {"z", {"a", "b"}}})),
               InputError);
  EXPECT_THROW(validate_market(raw({"a", "b"}, {{"a", {"a", "q"}}, {"b", {"a", "b"}}})),
               InputError);
  EXPECT_THROW(validate_market(raw({"a", "b"}, {{"a", {"a"}}, {"b", {"a", "b"}}})),
               InputError);
}

TEST(Rank, OneBasedAndChecked) {
  const auto m = letters({"cab", "abc", "bca"});
  EXPECT_EQ(rank(m, 0, 2), 1);
  EXPECT_EQ(rank(m, 0, 1), 3);
  EXPECT_EQ(m.house_at(2, 2), 2);
  EXPECT_TRUE(m.prefers(0, 0, 1));
  EXPECT_THROW(rank(m, 3, 0), std::out_of_range);
  EXPECT_THROW(rank(m, 0, -1), std::out_of_range);
}

TEST(DefaultNames, LettersThenNumbered) {
  EXPECT_EQ(default_agent_names(3), (std::vector<std::string>{"a", "b", "c"}));
  const auto many = default_agent_names(27);
  EXPECT_EQ(many.front(), "x1");
  EXPECT_EQ(many.back(), "x27");
}

TEST(AllocationType, RequiresPermutation) {
  EXPECT_THROW(Allocation({0, 0}), std::invalid_argument);
  EXPECT_THROW(Allocation({0, 2}), std::invalid_argument);
  EXPECT_EQ(Allocation::identity(3), houses("abc"));
}

TEST(Ttc, SingleAgentKeepsHouse) {
  const auto r = ttc_solve(letters({"a"}));
  EXPECT_EQ(r.allocation, Allocation::identity(1));
  EXPECT_EQ(r.trace.cycle_count(), 1u);
}

TEST(Ttc, IdentityTopIsIdentityInOneIteration) {
  const auto r = ttc_solve(letters({"abc", "bac", "cab"}));
  EXPECT_EQ(r.allocation, Allocation::identity(3));
  EXPECT_EQ(r.trace.iteration_count(), 1u);
  EXPECT_EQ(r.trace.cycle_lengths(), (std::vector<std::size_t>{1, 1, 1}));
}

TEST(Ttc, TwoCyclesInOneIterationOrderedByLowestMember) {
  const auto r = ttc_solve(letters({"bacd", "abcd", "dcab", "cdab"}));
  ASSERT_EQ(r.trace.iteration_count(), 1u);
  const auto& it = r.trace.iterations[0];
  ASSERT_EQ(it.size(), 2u);
  EXPECT_EQ(it[0], (TradingCycle{0, 1}));
  EXPECT_EQ(it[1], (TradingCycle{2, 3}));
  EXPECT_EQ(r.allocation, houses("badc"));
}

TEST(Ttc, CycleRotatedToLowestMember) {
  // c -> a -> b -> c: a points at b's house, b at c's, c at a's.
  const auto r = ttc_solve(letters({"bca", "cab", "abc"}));
  ASSERT_EQ(r.trace.cycle_count(), 1u);
  EXPECT_EQ(r.trace.iterations[0][0], (TradingCycle{0, 1, 2}));
  EXPECT_EQ(r.allocation, houses("bca"));
}

TEST(Ttc, ExampleOneFullMarket) {
  const auto market = testing::load_market("example1.json");
  const auto r = ttc_solve(market);
  EXPECT_EQ(r.allocation, houses("dbcaefg"));
  EXPECT_EQ(r.trace.iterations[0], (std::vector<TradingCycle>{{0, 3}}));
  EXPECT_EQ(allocation_from_trace(r.trace, market.size()), r.allocation);
}

TEST(Ttc, UniqueStrictCoreOnAllThreeAgentProfiles) {
  std::size_t profiles = 0;
  for_each_profile(3, [&](const auto& rows) {
    const HousingMarket m(default_agent_names(3), rows);
    const auto strict = brute_force_strict_core(m);
    ASSERT_EQ(strict.size(), 1u);
    EXPECT_EQ(strict[0], ttc_solve(m).allocation);
    ++profiles;
  });
  EXPECT_EQ(profiles, 216u);
}

TEST(Ttc, StrictBlockingCoreIsLargerOnSomeProfiles) {
  // With blocking by strict improvement only, 42 of the 216 profiles admit a
  // second unblocked allocation besides the TTC one.
  std::size_t wider = 0;
  for_each_profile(3, [&](const auto& rows) {
    const HousingMarket m(default_agent_names(3), rows);
    const auto core = brute_force_core(m);
    EXPECT_NE(std::find(core.begin(), core.end(), ttc_solve(m).allocation), core.end());
    if (core.size() != 1) ++wider;
  });
  EXPECT_EQ(wider, 42u);
}

TEST(Ttc, SecondUnblockedAllocationWitness) {
  // a: b a c, b: a c b, c: a b c. TTC swaps a and b; the 3-cycle a->b->c->a
  // is not blocked by any coalition in which everyone strictly gains.
  const auto m = letters({"bac", "acb", "abc"});
  EXPECT_EQ(ttc_solve(m).allocation, houses("bac"));
  const auto core = brute_force_core(m);
  ASSERT_EQ(core.size(), 2u);
  EXPECT_EQ(core[1], houses("bca"));
  EXPECT_FALSE(find_blocking_coalition(m, houses("bca")).has_value());
  const auto weak = find_weakly_blocking_coalition(m, houses("bca"));
  ASSERT_TRUE(weak.has_value());
  EXPECT_EQ(weak->members, (std::vector<AgentIndex>{0, 1}));
}

TEST(Ttc, EndowmentVersionTracksObjects) {
  // Rows rank objects; agent 0 holds object 1 and agent 1 holds object 0.
  const auto m = letters({"ab", "ab"});
  const std::vector<AgentIndex> endowment{1, 0};
  const auto r = ttc_solve(m, endowment);
  EXPECT_EQ(r.allocation[0], 1);
  EXPECT_EQ(r.allocation[1], 0);
  EXPECT_EQ(allocation_from_trace(r.trace, 2, endowment), r.allocation);
}

TEST(Misreport, TruthfulRowIsNeverProfitable) {
  const auto m = testing::load_market("example1.json");
  for (AgentIndex a = 0; a < 7; ++a) {
    const auto row = m.preferences(a);
    EXPECT_FALSE(misreport_is_profitable(m, a, row));
  }
}

TEST(Misreport, NoProfitableDeviationAtThreeAgents) {
  const auto perms = all_permutations(3);
  for_each_profile(3, [&](const auto& rows) {
    const HousingMarket m(default_agent_names(3), rows);
    for (AgentIndex a = 0; a < 3; ++a) {
      for (const auto& row : perms) ASSERT_FALSE(misreport_is_profitable(m, a, row));
    }
  });
}

}  // namespace
}  // namespace sslab
