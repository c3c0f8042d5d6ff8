#include "sslab/integration.hpp"

#include <algorithm>
#include <limits>

namespace sslab {

ExtendedHousingMarket::ExtendedHousingMarket(
    HousingMarket market, std::vector<std::vector<AgentIndex>> communities)
    : market_(std::move(market)), communities_(std::move(communities)) {
  const std::size_t n = market_.size();
  if (communities_.empty()) throw InputError("at least one community is required");
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  community_of_.assign(n, kUnset);
  local_index_.assign(n, kUnset);
  for (std::size_t j = 0; j < communities_.size(); ++j) {
    auto& c = communities_[j];
    if (c.empty()) {
      throw InputError("community " + std::to_string(j + 1) + " is empty");
    }
    std::sort(c.begin(), c.end());
    for (std::size_t m = 0; m < c.size(); ++m) {
      const AgentIndex i = c[m];
      if (!market_.contains(i)) {
        throw InputError("community " + std::to_string(j + 1) +
                         " names an unknown agent");
      }
      if (community_of_[i] != kUnset) {
        throw InputError("agent " + market_.name(i) +
                         " belongs to more than one community");
      }
      community_of_[i] = j;
      local_index_[i] = m;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (community_of_[i] == kUnset) {
      throw InputError("agent " + market_.name(static_cast<AgentIndex>(i)) +
                       " is not in any community");
    }
  }
}

HousingMarket restrict_preferences(const ExtendedHousingMarket& ehm, std::size_t j) {
  if (j >= ehm.community_count()) {
    throw std::out_of_range("community index " + std::to_string(j) + " out of range");
  }
  const auto members = ehm.community(j);
  const auto& market = ehm.market();
  std::vector<std::string> names;
  std::vector<std::vector<AgentIndex>> rows;
  names.reserve(members.size());
  rows.reserve(members.size());
  for (AgentIndex i : members) {
    names.push_back(market.name(i));
    std::vector<AgentIndex> row;
    row.reserve(members.size());
    for (AgentIndex h : market.preferences(i)) {
      if (ehm.community_of(h) == j) {
        row.push_back(static_cast<AgentIndex>(ehm.local_index(h)));
      }
    }
    rows.push_back(std::move(row));
  }
  return HousingMarket(std::move(names), std::move(rows));
}

MatchingScheme solve_scheme(const ExtendedHousingMarket& ehm) {
  MatchingScheme scheme;
  std::vector<AgentIndex> combined(ehm.size(), -1);
  for (std::size_t j = 0; j < ehm.community_count(); ++j) {
    auto result = ttc_solve(restrict_preferences(ehm, j));
    const auto members = ehm.community(j);
    for (std::size_t m = 0; m < members.size(); ++m) {
      combined[members[m]] = members[result.allocation[static_cast<AgentIndex>(m)]];
    }
    scheme.segregated.push_back(std::move(result.allocation));
    scheme.segregated_traces.push_back(std::move(result.trace));
  }
  scheme.segregated_combined = Allocation(std::move(combined));
  auto integrated = ttc_solve(ehm.market());
  scheme.integrated = std::move(integrated.allocation);
  scheme.integrated_trace = std::move(integrated.trace);
  return scheme;
}

IntegrationReport analyze(const ExtendedHousingMarket& ehm,
                          const MatchingScheme& scheme) {
  const std::size_t n = ehm.size();
  const std::size_t k = ehm.community_count();
  if (scheme.integrated.size() != n || scheme.segregated_combined.size() != n ||
      scheme.segregated.size() != k || scheme.segregated_traces.size() != k) {
    throw std::invalid_argument("matching scheme does not match the market");
  }
  for (std::size_t j = 0; j < k; ++j) {
    const auto members = ehm.community(j);
    if (scheme.segregated[j].size() != members.size()) {
      throw std::invalid_argument("segregated allocation size mismatch in community " +
                                  std::to_string(j + 1));
    }
    for (AgentIndex i : members) {
      if (ehm.community_of(scheme.segregated_combined[i]) != j) {
        throw std::invalid_argument("segregated allocation crosses communities");
      }
    }
  }

  const auto& market = ehm.market();
  IntegrationReport report;
  report.n = n;
  report.segregated_rank.resize(n);
  report.integrated_rank.resize(n);
  report.gain.resize(n);
  report.effect.resize(n);
  report.communities.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    report.communities[j].size = ehm.community(j).size();
    report.communities[j].segregated_cycles = scheme.segregated_traces[j].cycle_count();
    report.total_segregated_cycles += report.communities[j].segregated_cycles;
  }
  report.integrated_cycles = scheme.integrated_trace.cycle_count();

  for (std::size_t idx = 0; idx < n; ++idx) {
    const auto i = static_cast<AgentIndex>(idx);
    const int before = market.rank(i, scheme.segregated_combined[i]);
    const int after = market.rank(i, scheme.integrated[i]);
    const int gain = before - after;
    report.segregated_rank[idx] = before;
    report.integrated_rank[idx] = after;
    report.gain[idx] = gain;
    report.total_gain += gain;
    auto& community = report.communities[ehm.community_of(i)];
    community.total_gain += gain;
    if (gain > 0) {
      report.effect[idx] = Effect::kBenefited;
      report.benefited.push_back(i);
      community.benefited.push_back(i);
    } else if (gain < 0) {
      report.effect[idx] = Effect::kHarmed;
      report.harmed.push_back(i);
      community.harmed.push_back(i);
    } else {
      report.effect[idx] = Effect::kUnaffected;
      report.unaffected.push_back(i);
      community.unaffected.push_back(i);
    }
  }
  const auto nn = static_cast<std::int64_t>(n);
  report.gamma_bar = Rational(report.total_gain, nn * nn);
  for (auto& c : report.communities) {
    c.gamma_bar = Rational(c.total_gain, nn * static_cast<std::int64_t>(c.size));
  }
  return report;
}

CycleBoundCheck check_cycle_bound(const IntegrationReport& report) {
  CycleBoundCheck check;
  for (const auto& c : report.communities) {
    const auto margin = static_cast<std::int64_t>(c.size) -
                        static_cast<std::int64_t>(c.segregated_cycles) -
                        static_cast<std::int64_t>(c.harmed.size());
    check.margins.push_back(margin);
    if (margin < 0) check.holds = false;
  }
  return check;
}

}  // namespace sslab
