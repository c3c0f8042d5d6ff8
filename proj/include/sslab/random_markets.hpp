#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sslab/integration.hpp"
#include "sslab/oracles.hpp"

namespace sslab {

// SplitMix64 (Steele, Lea, Flood). Used both as a generator and as the
// mixing function that derives independent substream seeds from counters.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Seed of substream `index` under `parent`. Pure function of its inputs, so
// parallel schedules see the same streams.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept;

// Uniform integer in [0, bound) by rejection; identical on every platform.
std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t bound);

// Fisher-Yates shuffle driven by uniform_below.
void shuffle(std::span<AgentIndex> values, SplitMix64& rng);

// Random extended market: communities are consecutive index blocks of the
// given sizes, and agent i's row is a uniform permutation of all n houses
// drawn from substream derive_seed(seed, i).
ExtendedHousingMarket sample_ehm(std::span<const std::size_t> sizes, std::uint64_t seed);

// Consecutive blocks 0..n_1-1, n_1..n_1+n_2-1, ...
std::vector<std::vector<AgentIndex>> consecutive_communities(
    std::span<const std::size_t> sizes);

using BigRational = boost::multiprecision::cpp_rational;

// H_n = 1 + 1/2 + ... + 1/n. Exact form limited to n <= 10^4.
BigRational harmonic_exact(std::size_t n);
double harmonic(std::size_t n);

// Expected sum of core ranks in a random n-agent market: (n+1) H_n - n.
double expected_rank_sum(std::size_t n);

// Leading term sqrt(2 pi n) of the expected number of TTC cycles in a
// random n-agent market. The true expectation differs by O(log n), which is
// not estimated here.
double expected_cycles(std::size_t n);

struct ExpectedGain {
  double percentile = 0.0;  // expected average percentile gain of C_j
  double rank_units = 0.0;  // n * percentile: ranks gained per agent of C_j
};

// Expected gains from integration for a community of size n_j inside a
// random market of n agents. Requires 1 <= n_j <= n.
ExpectedGain expected_gain(std::size_t n, std::size_t n_j);

// n_j - sqrt(2 pi n_j): computable part of the upper bound on the expected
// number of harmed agents in a community. The omitted O(log n_j) term only
// tightens the true bound.
double harmed_bound(std::size_t n_j);
double harmed_bound_total(std::span<const std::size_t> sizes);
// Equal-size communities with n_1 at or below this value have expected
// harmed fraction at most 1/2 (8 pi).
double half_harm_threshold();

// Random serial dictatorship: agents pick, in `order`, their best remaining
// object. Rows of `market` rank objects.
Allocation rsd_allocation(const HousingMarket& market, std::span<const AgentIndex> order);

// Allocation counts over all n! endowments (TTC) and all n! orders (RSD).
using AllocationDistribution = std::map<Allocation, std::uint64_t>;
AllocationDistribution ttc_random_endowment_distribution(const HousingMarket& market,
                                                         const BruteForceLimits& limits = {});
AllocationDistribution rsd_distribution(const HousingMarket& market,
                                        const BruteForceLimits& limits = {});

// Both distributions have n! draws, so equal counts mean equal
// probabilities exactly.
bool rsd_equivalence_check(const HousingMarket& market, const BruteForceLimits& limits = {});

}  // namespace sslab
