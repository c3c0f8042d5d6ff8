#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sslab {

struct SimulationConfig {
  std::vector<std::size_t> sizes;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  // Worker threads; 0 picks the hardware concurrency. Never affects results.
  std::size_t threads = 1;
};

// Sample mean, standard deviation and standard error. sd and se are absent
// for a single observation.
struct Moments {
  double mean = 0.0;
  std::optional<double> sd;
  std::optional<double> se;
};

Moments moments(const std::vector<double>& values);

struct CommunitySummary {
  std::size_t size = 0;
  Moments gain_ranks;       // total community gain / n_j
  Moments gain_percentile;  // total community gain / (n * n_j)
  Moments benefited;
  Moments harmed;
  Moments unaffected;
  Moments cycles;  // segregated TTC cycles, t_j
};

struct SimulationSummary {
  SimulationConfig config;
  std::vector<CommunitySummary> communities;
  Moments fraction_benefited;
  Moments fraction_harmed;
  Moments fraction_unaffected;
  Moments segregated_rank_sum;
  Moments integrated_rank_sum;
  Moments integrated_cycles;
  // Trials where some community had more harmed agents than n_j - t_j.
  // Must be zero; the first offending trial index is kept for replay.
  std::size_t cycle_bound_violations = 0;
  std::optional<std::size_t> first_violation_trial;
};

inline constexpr const char* kTrialSeedRule =
    "trial t uses market seed derive_seed(master_seed, t); agent i of that market "
    "draws its row from SplitMix64(derive_seed(market_seed, i))";

// Seed of trial `t` under `master`.
std::uint64_t trial_seed(std::uint64_t master, std::size_t t) noexcept;

// Runs config.trials independent sample -> solve -> analyze rounds and
// reduces them in trial order. Throws InputError for an invalid config.
SimulationSummary run_simulation(const SimulationConfig& config);

}  // namespace sslab
