#include "sslab/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>

namespace sslab {

namespace {

void check_cap(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap) {
    throw InstanceTooLarge(std::string(what) + ": n = " + std::to_string(n) +
                           " exceeds cap " + std::to_string(cap) +
                           " (set SSLAB_MAX_BRUTE_N to raise it)");
  }
}

// Assigns houses of `members` to `members` so that everyone improves on
// `allocation`: strictly for every member, or (weak) weakly for every member
// and strictly for at least one. Plain backtracking over members.
bool assign_improving(const HousingMarket& market, const Allocation& allocation,
                      const std::vector<AgentIndex>& members, std::size_t m,
                      std::uint32_t used, bool weak, bool strict_seen,
                      std::vector<AgentIndex>& houses) {
  if (m == members.size()) return strict_seen || !weak;
  const AgentIndex i = members[m];
  const int current = market.rank(i, allocation[i]);
  for (std::size_t h = 0; h < members.size(); ++h) {
    if (used & (1u << h)) continue;
    const int offered = market.rank(i, members[h]);
    if (offered > current || (offered == current && !weak)) continue;
    houses[m] = members[h];
    if (assign_improving(market, allocation, members, m + 1, used | (1u << h), weak,
                         strict_seen || offered < current, houses)) {
      return true;
    }
  }
  return false;
}

std::optional<BlockingCoalition> scan_coalitions(const HousingMarket& market,
                                                 const Allocation& allocation,
                                                 std::span<const AgentIndex> pool,
                                                 const BruteForceLimits& limits, bool weak) {
  if (allocation.size() != market.size()) {
    throw std::invalid_argument("allocation size does not match market");
  }
  check_cap(pool.size(), std::min<std::size_t>(limits.max_coalition_pool, 31),
            weak ? "find_weakly_blocking_coalition" : "find_blocking_coalition");
  // An agent already holding its top house can never strictly improve.
  std::vector<AgentIndex> candidates;
  for (AgentIndex i : pool) {
    if (weak || market.rank(i, allocation[i]) > 1) candidates.push_back(i);
  }
  const std::size_t p = candidates.size();
  std::vector<AgentIndex> members;
  std::vector<AgentIndex> houses;
  for (std::size_t size = 1; size <= p; ++size) {
    // Gosper's hack over all p-bit masks with `size` bits set.
    std::uint32_t mask = (1u << size) - 1;
    const std::uint32_t limit = 1u << p;
    while (mask < limit) {
      members.clear();
      for (std::size_t b = 0; b < p; ++b) {
        if (mask & (1u << b)) members.push_back(candidates[b]);
      }
      houses.assign(size, -1);
      if (assign_improving(market, allocation, members, 0, 0, weak, false, houses)) {
        return BlockingCoalition{members, houses};
      }
      const std::uint32_t c = mask & (~mask + 1);
      const std::uint32_t r = mask + c;
      mask = (((r ^ mask) >> 2) / c) | r;
    }
  }
  return std::nullopt;
}

std::vector<AgentIndex> everyone(std::size_t n) {
  std::vector<AgentIndex> all(n);
  std::iota(all.begin(), all.end(), 0);
  return all;
}

std::vector<Allocation> unblocked_allocations(const HousingMarket& market,
                                              const BruteForceLimits& limits, bool weak) {
  const std::size_t n = market.size();
  check_cap(n, limits.max_enumeration_n, weak ? "brute_force_strict_core" : "brute_force_core");
  const auto pool = everyone(n);
  std::vector<AgentIndex> perm = pool;
  std::vector<Allocation> core;
  do {
    Allocation candidate(perm);
    if (!is_individually_rational(market, candidate)) continue;
    if (!scan_coalitions(market, candidate, pool, limits, weak)) {
      core.push_back(std::move(candidate));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return core;
}

}  // namespace

BruteForceLimits BruteForceLimits::from_environment() {
  BruteForceLimits limits;
  if (const char* env = std::getenv("SSLAB_MAX_BRUTE_N")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      limits.max_enumeration_n = v;
      limits.max_coalition_pool = std::max<std::size_t>(v, limits.max_coalition_pool);
    }
  }
  return limits;
}

std::optional<BlockingCoalition> find_blocking_coalition(
    const HousingMarket& market, const Allocation& allocation,
    const BruteForceLimits& limits) {
  return scan_coalitions(market, allocation, everyone(market.size()), limits, false);
}

std::optional<BlockingCoalition> find_blocking_coalition(
    const HousingMarket& market, const Allocation& allocation,
    std::span<const AgentIndex> pool, const BruteForceLimits& limits) {
  return scan_coalitions(market, allocation, pool, limits, false);
}

std::optional<BlockingCoalition> find_weakly_blocking_coalition(
    const HousingMarket& market, const Allocation& allocation,
    const BruteForceLimits& limits) {
  return scan_coalitions(market, allocation, everyone(market.size()), limits, true);
}

std::vector<Allocation> brute_force_core(const HousingMarket& market,
                                         const BruteForceLimits& limits) {
  return unblocked_allocations(market, limits, false);
}

std::vector<Allocation> brute_force_strict_core(const HousingMarket& market,
                                                const BruteForceLimits& limits) {
  return unblocked_allocations(market, limits, true);
}

bool is_individually_rational(const HousingMarket& market,
                              const Allocation& allocation) {
  for (std::size_t i = 0; i < market.size(); ++i) {
    const auto a = static_cast<AgentIndex>(i);
    if (market.prefers(a, a, allocation[a])) return false;
  }
  return true;
}

bool is_pareto_optimal(const HousingMarket& market, const Allocation& allocation,
                       const BruteForceLimits& limits) {
  const std::size_t n = market.size();
  check_cap(n, limits.max_enumeration_n, "is_pareto_optimal");
  std::vector<AgentIndex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool weakly_better = true;
    bool strictly_better = false;
    for (std::size_t i = 0; i < n && weakly_better; ++i) {
      const auto a = static_cast<AgentIndex>(i);
      const int now = market.rank(a, allocation[a]);
      const int alt = market.rank(a, perm[i]);
      if (alt > now) weakly_better = false;
      if (alt < now) strictly_better = true;
    }
    if (weakly_better && strictly_better) return false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

RankHistogram rank_histogram(const HousingMarket& market,
                             const Allocation& allocation) {
  const std::size_t n = market.size();
  RankHistogram h{std::vector<std::size_t>(n, 0), std::vector<std::size_t>(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = static_cast<AgentIndex>(i);
    ++h.exact[market.rank(a, allocation[a]) - 1];
  }
  std::size_t running = 0;
  for (std::size_t r = n; r-- > 0;) {
    running += h.exact[r];
    h.at_least[r] = running;
  }
  return h;
}

}  // namespace sslab
