#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/rational.hpp>

#include "sslab/market.hpp"
#include "sslab/ttc.hpp"

namespace sslab {

using Rational = boost::rational<std::int64_t>;

// A housing market whose agents are partitioned into k >= 1 communities.
// Community order is the order given; members are kept sorted by index.
class ExtendedHousingMarket {
 public:
  // Throws InputError unless the communities partition the agent set.
  ExtendedHousingMarket(HousingMarket market,
                        std::vector<std::vector<AgentIndex>> communities);

  const HousingMarket& market() const noexcept { return market_; }
  std::size_t size() const noexcept { return market_.size(); }
  std::size_t community_count() const noexcept { return communities_.size(); }
  std::span<const AgentIndex> community(std::size_t j) const {
    return communities_.at(j);
  }
  const std::vector<std::vector<AgentIndex>>& communities() const noexcept {
    return communities_;
  }
  std::size_t community_of(AgentIndex i) const { return community_of_.at(i); }
  std::size_t local_index(AgentIndex i) const { return local_index_.at(i); }

 private:
  HousingMarket market_;
  std::vector<std::vector<AgentIndex>> communities_;
  std::vector<std::size_t> community_of_;
  std::vector<std::size_t> local_index_;
};

// The market (C_j, restricted rows): community j's agents, each ranking only
// houses owned inside C_j in their original relative order. Local index m
// corresponds to ehm.community(j)[m]. j is 0-based.
HousingMarket restrict_preferences(const ExtendedHousingMarket& ehm, std::size_t j);

// Core allocations before and after integration.
struct MatchingScheme {
  // Per community, in local indices of restrict_preferences(ehm, j).
  std::vector<Allocation> segregated;
  std::vector<TtcTrace> segregated_traces;
  // The per-community allocations lifted to global indices.
  Allocation segregated_combined;
  Allocation integrated;
  TtcTrace integrated_trace;
};

MatchingScheme solve_scheme(const ExtendedHousingMarket& ehm);

enum class Effect { kBenefited, kUnaffected, kHarmed };

struct CommunityReport {
  std::size_t size = 0;
  std::int64_t total_gain = 0;
  // total_gain / (n * n_j).
  Rational gamma_bar;
  std::vector<AgentIndex> benefited, unaffected, harmed;
  // Trading cycles in the segregated TTC run (t_j).
  std::size_t segregated_cycles = 0;
};

struct IntegrationReport {
  std::size_t n = 0;
  // Full-list ranks of the houses received before and after integration.
  std::vector<int> segregated_rank;
  std::vector<int> integrated_rank;
  std::vector<int> gain;
  std::vector<Effect> effect;
  std::int64_t total_gain = 0;
  // total_gain / n^2; always in (-1, 1).
  Rational gamma_bar;
  std::vector<AgentIndex> benefited, unaffected, harmed;
  std::vector<CommunityReport> communities;
  std::size_t total_segregated_cycles = 0;
  std::size_t integrated_cycles = 0;
};

// Throws std::invalid_argument when the scheme does not belong to ehm.
IntegrationReport analyze(const ExtendedHousingMarket& ehm,
                          const MatchingScheme& scheme);

// |harmed in C_j| <= n_j - t_j for every community.
struct CycleBoundCheck {
  bool holds = true;
  // n_j - t_j - |harmed in C_j|, one per community.
  std::vector<std::int64_t> margins;
};

CycleBoundCheck check_cycle_bound(const IntegrationReport& report);

}  // namespace sslab
