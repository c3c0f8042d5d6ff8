#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "sslab/integration.hpp"

namespace sslab {

// Sequential dual dictator domain. For community C_j with restricted rows,
// q(r) is the set of houses some member ranks r-th and Q(r) the union of
// q(1..r). The profile is in the domain when |Q(r)| <= r + 1 for every r
// and every community.

struct SddViolation {
  std::size_t community = 0;  // 0-based
  int rank = 0;               // 1-based
  std::vector<AgentIndex> set;  // Q(rank), global indices, ascending
};

struct SddCommunityDiagnostic {
  // q[r-1] and Q[r-1] for r = 1..n_j, global indices, ascending.
  std::vector<std::vector<AgentIndex>> q;
  std::vector<std::vector<AgentIndex>> Q;
};

struct SddDiagnostic {
  std::vector<SddCommunityDiagnostic> communities;
  bool satisfied = true;
  std::optional<SddViolation> first_violation;
};

SddDiagnostic sdd_diagnostic(const ExtendedHousingMarket& ehm);

// Thrown by verify_sdd_bound for a profile outside the domain.
class NotInSddDomain : public InputError {
 public:
  using InputError::InputError;
};

// Random profile in the domain. Per community a uniform ordering pi of its
// members is fixed; each member's restricted rank-r house is drawn uniformly
// from the unused houses among pi_1..pi_{r+1}. Houses of other communities
// are then interleaved at uniformly random positions. The staircase never
// runs out of feasible houses, so no retries are needed.
ExtendedHousingMarket sample_sdd_profile(std::span<const std::size_t> sizes,
                                         std::uint64_t seed);

struct SddCommunityBound {
  std::size_t size = 0;
  std::size_t harmed = 0;
  std::size_t segregated_cycles = 0;
  std::size_t max_cycle_length = 0;
  std::map<std::size_t, std::size_t> cycle_length_histogram;
  bool harm_bound_holds = true;     // 2 * harmed <= n_j
  bool cycle_claim_holds = true;    // every segregated cycle has length <= 2
  bool cycle_route_holds = true;    // harmed <= n_j - t_j and 2 * t_j >= n_j
  // n_j / 2 - harmed, exact.
  Rational margin;
};

struct SddBoundReport {
  std::vector<SddCommunityBound> communities;
  bool holds = true;
};

// Solves the scheme and checks the harm bound and the cycle-length claim in
// every community. Throws NotInSddDomain when sdd_diagnostic fails.
SddBoundReport verify_sdd_bound(const ExtendedHousingMarket& ehm);

}  // namespace sslab
