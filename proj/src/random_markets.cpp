#include "sslab/random_markets.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "sslab/enumerate.hpp"
#include "sslab/ttc.hpp"

namespace sslab {

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept {
  return SplitMix64::mix(SplitMix64::mix(parent) ^
                         (index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
}

std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  // Largest multiple of bound that fits; draws above it are rejected.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

void shuffle(std::span<AgentIndex> values, SplitMix64& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = uniform_below(rng, i);
    std::swap(values[i - 1], values[j]);
  }
}

std::vector<std::vector<AgentIndex>> consecutive_communities(
    std::span<const std::size_t> sizes) {
  std::vector<std::vector<AgentIndex>> communities;
  AgentIndex next = 0;
  for (std::size_t s : sizes) {
    if (s == 0) throw InputError("community sizes must be positive");
    auto& c = communities.emplace_back();
    for (std::size_t m = 0; m < s; ++m) c.push_back(next++);
  }
  if (communities.empty()) throw InputError("at least one community size is required");
  return communities;
}

ExtendedHousingMarket sample_ehm(std::span<const std::size_t> sizes, std::uint64_t seed) {
  auto communities = consecutive_communities(sizes);
  const std::size_t n = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  std::vector<std::vector<AgentIndex>> rows(n, std::vector<AgentIndex>(n));
  for (std::size_t i = 0; i < n; ++i) {
    std::iota(rows[i].begin(), rows[i].end(), 0);
    SplitMix64 rng(derive_seed(seed, i));
    shuffle(rows[i], rng);
  }
  return ExtendedHousingMarket(HousingMarket(default_agent_names(n), std::move(rows)),
                               std::move(communities));
}

BigRational harmonic_exact(std::size_t n) {
  if (n == 0) throw std::invalid_argument("harmonic number needs n >= 1");
  if (n > 10000) throw std::invalid_argument("exact harmonic number limited to n <= 10000");
  // Sum over a common denominator, reducing once at the end.
  using boost::multiprecision::cpp_int;
  cpp_int num = 0;
  cpp_int den = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    num = num * i + den;
    den *= i;
    if (i % 64 == 0) {
      const cpp_int g = gcd(num, den);
      num /= g;
      den /= g;
    }
  }
  return BigRational(num, den);
}

double harmonic(std::size_t n) {
  if (n == 0) throw std::invalid_argument("harmonic number needs n >= 1");
  double sum = 0.0;
  for (std::size_t i = n; i >= 1; --i) sum += 1.0 / static_cast<double>(i);
  return sum;
}

double expected_rank_sum(std::size_t n) {
  const double nd = static_cast<double>(n);
  return (nd + 1.0) * harmonic(n) - nd;
}

double expected_cycles(std::size_t n) {
  return std::sqrt(2.0 * std::numbers::pi * static_cast<double>(n));
}

ExpectedGain expected_gain(std::size_t n, std::size_t n_j) {
  if (n_j == 0 || n == 0) throw std::invalid_argument("expected_gain needs sizes >= 1");
  if (n_j > n) throw std::invalid_argument("community larger than the market");
  if (n_j == n) return {0.0, 0.0};
  const double nd = static_cast<double>(n);
  const double nj = static_cast<double>(n_j);
  // Mean relative rank inside C_j, scaled to a full-list rank by (n+1)/(n_j+1).
  const double before = (nd + 1.0) * expected_rank_sum(n_j) / (nj * (nj + 1.0) * nd);
  const double after = expected_rank_sum(n) / (nd * nd);
  const double percentile = before - after;
  return {percentile, nd * percentile};
}

double harmed_bound(std::size_t n_j) {
  return static_cast<double>(n_j) - expected_cycles(n_j);
}

double harmed_bound_total(std::span<const std::size_t> sizes) {
  double total = 0.0;
  for (std::size_t s : sizes) total += harmed_bound(s);
  return total;
}

double half_harm_threshold() { return 8.0 * std::numbers::pi; }

Allocation rsd_allocation(const HousingMarket& market, std::span<const AgentIndex> order) {
  const std::size_t n = market.size();
  if (order.size() != n || !is_permutation_of_indices(order)) {
    throw std::invalid_argument("serial order is not a permutation of the agents");
  }
  std::vector<char> taken(n, 0);
  std::vector<AgentIndex> assign(n, -1);
  for (AgentIndex agent : order) {
    for (AgentIndex h : market.preferences(agent)) {
      if (!taken[h]) {
        taken[h] = 1;
        assign[agent] = h;
        break;
      }
    }
  }
  return Allocation(std::move(assign));
}

AllocationDistribution ttc_random_endowment_distribution(const HousingMarket& market,
                                                         const BruteForceLimits& limits) {
  if (market.size() > limits.max_enumeration_n) {
    throw InstanceTooLarge("endowment enumeration: n = " + std::to_string(market.size()) +
                           " exceeds cap " + std::to_string(limits.max_enumeration_n));
  }
  AllocationDistribution counts;
  for (const auto& endowment : all_permutations(market.size())) {
    ++counts[ttc_solve(market, endowment).allocation];
  }
  return counts;
}

AllocationDistribution rsd_distribution(const HousingMarket& market,
                                        const BruteForceLimits& limits) {
  if (market.size() > limits.max_enumeration_n) {
    throw InstanceTooLarge("serial order enumeration: n = " + std::to_string(market.size()) +
                           " exceeds cap " + std::to_string(limits.max_enumeration_n));
  }
  AllocationDistribution counts;
  for (const auto& order : all_permutations(market.size())) {
    ++counts[rsd_allocation(market, order)];
  }
  return counts;
}

bool rsd_equivalence_check(const HousingMarket& market, const BruteForceLimits& limits) {
  return ttc_random_endowment_distribution(market, limits) ==
         rsd_distribution(market, limits);
}

}  // namespace sslab
