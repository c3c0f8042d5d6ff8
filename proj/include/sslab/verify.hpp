#pragma once

// Falsification suites: exhaustive and sampled sweeps that check the
// structural results about core allocations and integration. Each failure
// carries the offending instance so it can be replayed as a fixture.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sslab/io.hpp"

namespace sslab {

struct CheckFailure {
  std::string check;
  std::string detail;
  Json witness;
};

struct SuiteReport {
  std::string suite;
  std::size_t instances = 0;
  std::size_t checks = 0;
  std::size_t failure_count = 0;
  std::map<std::string, std::size_t> failures_by_check;
  // At most kMaxRecordedFailures entries, in enumeration order.
  std::vector<CheckFailure> failures;

  bool passed() const noexcept { return failure_count == 0; }
  void merge(SuiteReport other);
};

inline constexpr std::size_t kMaxRecordedFailures = 16;

struct ExhaustiveChecks {
  // Individual rationality of the core, m(r) and M(r) caps, trace
  // consistency, and |harmed in C_j| <= n_j - t_j.
  bool lemmas = true;
  // |harmed| <= n - k, the average-gain lower bound, classification
  // consistency, and no community blocking the integrated allocation.
  bool bounds = true;
  // For profiles in the sequential dual dictator domain: the harm bound and
  // the segregated cycle-length claim.
  bool sdd = false;
};

// Every preference profile and every partition for n = 1..max_n.
SuiteReport verify_exhaustive(std::size_t max_n, const ExhaustiveChecks& checks,
                              std::size_t threads = 0);

// build_worst_case meets both bounds with equality for 2 <= k <= n <= max_n,
// plus any extra (n, k) cells.
SuiteReport verify_worst_case_grid(
    std::size_t max_n, const std::vector<std::pair<std::size_t, std::size_t>>& extra = {});

// Compares both brute-force cores with ttc_solve on every profile with
// n <= exhaustive_n, then on `samples` random profiles with n spread over
// sample_min_n..sample_max_n. Checks: "core-equals-ttc" (strict-improvement
// blocking), "core-contains-ttc" and "strict-core-equals-ttc".
SuiteReport verify_core_oracle(std::size_t exhaustive_n, std::size_t samples,
                               std::size_t sample_min_n, std::size_t sample_max_n,
                               std::uint64_t seed, std::size_t threads = 0);

// No agent gains by misreporting: all alternative rows for n <= exhaustive_n,
// then `deviations` random rows per agent-profile pair on `profiles` random
// profiles for each n in sample_min_n..sample_max_n.
SuiteReport verify_strategy_proofness(std::size_t exhaustive_n, std::size_t sample_min_n,
                                      std::size_t sample_max_n, std::size_t profiles,
                                      std::size_t deviations, std::uint64_t seed,
                                      std::size_t threads = 0);

// Exact distribution equality of core-from-random-endowments and random
// serial dictatorship on `profiles` random profiles per n in min_n..max_n.
SuiteReport verify_rsd(std::size_t min_n, std::size_t max_n, std::size_t profiles,
                       std::uint64_t seed, std::size_t threads = 0);

// verify_sdd_bound on `count` sampled domain profiles with 1..max_k
// communities of 1..max_size agents each.
SuiteReport verify_sdd(std::size_t count, std::size_t max_k, std::size_t max_size,
                       std::uint64_t seed, std::size_t threads = 0);

Json suite_json(const SuiteReport& report);

}  // namespace sslab
