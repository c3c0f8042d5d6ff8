#pragma once

// Brute-force checks for small markets. These enumerate subsets and
// permutations directly and share no code with the TTC solver, so they can
// serve as an independent oracle for it.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sslab/market.hpp"

namespace sslab {

struct BruteForceLimits {
  // Cap on n for n!-sized enumerations (core, Pareto, RSD equivalence).
  std::size_t max_enumeration_n = 7;
  // Cap on the number of agents whose subsets are scanned for coalitions.
  std::size_t max_coalition_pool = 16;

  // Defaults, with SSLAB_MAX_BRUTE_N (if set) overriding both caps.
  static BruteForceLimits from_environment();
};

// members[m] receives houses[m]; the houses are exactly the members'
// endowments and every member strictly prefers its new house.
struct BlockingCoalition {
  std::vector<AgentIndex> members;
  std::vector<AgentIndex> houses;
};

// Scans coalitions in order of increasing size, so a returned witness has
// minimum cardinality. Throws InstanceTooLarge above the pool cap.
std::optional<BlockingCoalition> find_blocking_coalition(
    const HousingMarket& market, const Allocation& allocation,
    const BruteForceLimits& limits = {});

// Same, with coalitions restricted to subsets of `pool`.
std::optional<BlockingCoalition> find_blocking_coalition(
    const HousingMarket& market, const Allocation& allocation,
    std::span<const AgentIndex> pool, const BruteForceLimits& limits = {});

// Coalition whose members all weakly improve and at least one strictly.
// Members may keep their own house.
std::optional<BlockingCoalition> find_weakly_blocking_coalition(
    const HousingMarket& market, const Allocation& allocation,
    const BruteForceLimits& limits = {});

// Every allocation no coalition blocks, by enumerating all n! allocations.
// Blocking requires every member to strictly improve, so on some profiles
// more than one allocation survives.
std::vector<Allocation> brute_force_core(const HousingMarket& market,
                                         const BruteForceLimits& limits = {});

// Every allocation no coalition weakly blocks. Always the TTC allocation alone.
std::vector<Allocation> brute_force_strict_core(const HousingMarket& market,
                                                const BruteForceLimits& limits = {});

bool is_individually_rational(const HousingMarket& market,
                              const Allocation& allocation);

// Exhaustive over all n! alternatives.
bool is_pareto_optimal(const HousingMarket& market, const Allocation& allocation,
                       const BruteForceLimits& limits = {});

// m(r): agents receiving their rank-r house; M(r): agents receiving a house
// of rank r or worse. Both indexed by r = 1..n.
struct RankHistogram {
  std::vector<std::size_t> exact;
  std::vector<std::size_t> at_least;

  std::size_t m(int r) const { return exact.at(r - 1); }
  std::size_t M(int r) const { return at_least.at(r - 1); }
};

RankHistogram rank_histogram(const HousingMarket& market,
                             const Allocation& allocation);

}  // namespace sslab
