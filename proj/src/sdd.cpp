#include "sslab/sdd.hpp"

#include <algorithm>
#include <numeric>

#include "sslab/random_markets.hpp"

namespace sslab {

namespace {

// Salt separating community-ordering streams from agent-row streams.
constexpr std::uint64_t kOrderingStream = 0x5DD0'0000'0000'0001ULL;

}  // namespace

SddDiagnostic sdd_diagnostic(const ExtendedHousingMarket& ehm) {
  SddDiagnostic diag;
  for (std::size_t j = 0; j < ehm.community_count(); ++j) {
    const auto members = ehm.community(j);
    const auto restricted = restrict_preferences(ehm, j);
    const std::size_t nj = members.size();
    SddCommunityDiagnostic cd;
    std::vector<char> in_union(nj, 0);
    std::vector<AgentIndex> running;
    for (std::size_t r = 1; r <= nj; ++r) {
      std::vector<char> in_level(nj, 0);
      for (std::size_t m = 0; m < nj; ++m) {
        const AgentIndex h = restricted.house_at(static_cast<AgentIndex>(m), static_cast<int>(r));
        in_level[h] = 1;
        if (!in_union[h]) {
          in_union[h] = 1;
          running.push_back(members[h]);
        }
      }
      std::vector<AgentIndex> level;
      for (std::size_t h = 0; h < nj; ++h) {
        if (in_level[h]) level.push_back(members[h]);
      }
      std::sort(running.begin(), running.end());
      cd.q.push_back(std::move(level));
      cd.Q.push_back(running);
      if (running.size() > r + 1 && diag.satisfied) {
        diag.satisfied = false;
        diag.first_violation = SddViolation{j, static_cast<int>(r), running};
      }
    }
    diag.communities.push_back(std::move(cd));
  }
  return diag;
}

ExtendedHousingMarket sample_sdd_profile(std::span<const std::size_t> sizes,
                                         std::uint64_t seed) {
  auto communities = consecutive_communities(sizes);
  const std::size_t n = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  std::vector<std::vector<AgentIndex>> rows(n);
  const std::uint64_t ordering_seed = derive_seed(seed, kOrderingStream);

  for (std::size_t j = 0; j < communities.size(); ++j) {
    const auto& members = communities[j];
    const std::size_t nj = members.size();
    std::vector<AgentIndex> order(members);
    SplitMix64 order_rng(derive_seed(ordering_seed, j));
    shuffle(order, order_rng);

    std::vector<AgentIndex> outside;
    for (std::size_t h = 0; h < n; ++h) {
      const auto a = static_cast<AgentIndex>(h);
      if (a < members.front() || a > members.back()) outside.push_back(a);
    }

    for (AgentIndex i : members) {
      SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
      std::vector<char> used(nj, 0);  // by position in `order`
      std::vector<AgentIndex> restricted;
      std::vector<std::size_t> feasible;
      for (std::size_t r = 1; r <= nj; ++r) {
        feasible.clear();
        for (std::size_t p = 0; p < std::min(r + 1, nj); ++p) {
          if (!used[p]) feasible.push_back(p);
        }
        const std::size_t pick = feasible[uniform_below(rng, feasible.size())];
        used[pick] = 1;
        restricted.push_back(order[pick]);
      }

      std::vector<AgentIndex> others(outside);
      shuffle(others, rng);
      // Positions of own-community houses: a uniform n_j-subset of 0..n-1.
      std::vector<AgentIndex> slots(n);
      std::iota(slots.begin(), slots.end(), 0);
      shuffle(slots, rng);
      std::vector<char> own_slot(n, 0);
      for (std::size_t s = 0; s < nj; ++s) own_slot[slots[s]] = 1;
      auto& row = rows[i];
      std::size_t a = 0, b = 0;
      for (std::size_t pos = 0; pos < n; ++pos) {
        row.push_back(own_slot[pos] ? restricted[a++] : others[b++]);
      }
    }
  }
  return ExtendedHousingMarket(HousingMarket(default_agent_names(n), std::move(rows)),
                               std::move(communities));
}

SddBoundReport verify_sdd_bound(const ExtendedHousingMarket& ehm) {
  const auto diag = sdd_diagnostic(ehm);
  if (!diag.satisfied) {
    const auto& v = *diag.first_violation;
    throw NotInSddDomain("profile is not sequential dual dictator: community " +
                         std::to_string(v.community + 1) + ", rank " +
                         std::to_string(v.rank) + ", |Q| = " + std::to_string(v.set.size()));
  }
  const auto scheme = solve_scheme(ehm);
  const auto report = analyze(ehm, scheme);
  SddBoundReport out;
  for (std::size_t j = 0; j < ehm.community_count(); ++j) {
    const auto& c = report.communities[j];
    const auto& trace = scheme.segregated_traces[j];
    SddCommunityBound b;
    b.size = c.size;
    b.harmed = c.harmed.size();
    b.segregated_cycles = c.segregated_cycles;
    b.max_cycle_length = trace.max_cycle_length();
    for (std::size_t len : trace.cycle_lengths()) ++b.cycle_length_histogram[len];
    b.harm_bound_holds = 2 * b.harmed <= b.size;
    b.cycle_claim_holds = b.max_cycle_length <= 2;
    b.cycle_route_holds = b.harmed + b.segregated_cycles <= b.size &&
                          2 * b.segregated_cycles >= b.size;
    b.margin = Rational(static_cast<std::int64_t>(b.size), 2) -
               Rational(static_cast<std::int64_t>(b.harmed));
    if (!b.harm_bound_holds || !b.cycle_claim_holds || !b.cycle_route_holds) {
      out.holds = false;
    }
    out.communities.push_back(std::move(b));
  }
  return out;
}

}  // namespace sslab
