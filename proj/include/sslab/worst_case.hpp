#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sslab/integration.hpp"

namespace sslab {

struct WorstCaseSpec {
  std::size_t n = 0;
  std::size_t k = 0;
  // Community sizes; empty means a near-equal split (earlier communities
  // take the remainder).
  std::vector<std::size_t> sizes;
};

// Extremal market for integration. Agents are numbered community by
// community. The first agent of each community (the set X) ranks the next
// community's first agent top (cyclically) and its own community's last
// agent second. Every other agent ranks its predecessor top, then the
// X-houses, then the remaining non-X houses in ascending order.
//
// Integration then gives X their top house and leaves everyone else with a
// house ranked k+1..n, while segregation gives X their second choice and
// everyone else their first. Requires k >= 2.
ExtendedHousingMarket build_worst_case(const WorstCaseSpec& spec);

// (-n^2 + n + k^2 + k) / (2 n^2), the least possible value of the average
// percentile gain for n agents in k communities. Requires 1 <= k <= n.
Rational worst_case_gamma_bar(std::int64_t n, std::int64_t k);

struct ExtremalReport {
  std::size_t harmed = 0;
  std::size_t harmed_bound = 0;  // n - k
  bool harmed_extremal = false;
  std::int64_t harmed_slack = 0;  // n - k - harmed
  Rational gamma_bar;
  Rational gamma_bound;
  bool gamma_extremal = false;
  Rational gamma_slack;  // gamma_bar - gamma_bound
};

ExtremalReport verify_extremal(const ExtendedHousingMarket& ehm);

}  // namespace sslab
