#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sslab {

// Dense internal agent index. Agent i is endowed with house i, so the same
// index also names a house.
using AgentIndex = std::int32_t;

// Malformed or inconsistent input. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A brute-force routine was asked to enumerate an instance above its cap.
class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Preference data as it appears in an instance file, before validation.
struct RawMarket {
  std::vector<std::string> agents;
  // One entry per agent row, in file order; rows list house owners from
  // most to least preferred.
  std::vector<std::pair<std::string, std::vector<std::string>>> preferences;
};

// A Shapley-Scarf housing market: n agents with strict, complete rankings
// over all n houses. Immutable once built.
class HousingMarket {
 public:
  // rows[i] is agent i's ranking of house owners. Throws InputError unless
  // every row is a permutation of 0..n-1 and names are unique.
  HousingMarket(std::vector<std::string> names,
                std::vector<std::vector<AgentIndex>> rows);

  std::size_t size() const noexcept { return n_; }
  const std::string& name(AgentIndex i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<AgentIndex> index_of(std::string_view name) const;

  std::span<const AgentIndex> preferences(AgentIndex i) const {
    return {prefs_.data() + static_cast<std::size_t>(i) * n_, n_};
  }

  // 1-based position of `house` in `agent`'s list. Unchecked.
  int rank(AgentIndex agent, AgentIndex house) const noexcept {
    return ranks_[static_cast<std::size_t>(agent) * n_ + house];
  }
  bool prefers(AgentIndex agent, AgentIndex a, AgentIndex b) const noexcept {
    return rank(agent, a) < rank(agent, b);
  }
  AgentIndex house_at(AgentIndex agent, int rank) const {
    return prefs_.at(static_cast<std::size_t>(agent) * n_ + (rank - 1));
  }

  bool contains(AgentIndex i) const noexcept {
    return i >= 0 && static_cast<std::size_t>(i) < n_;
  }

  // Copy of this market with one agent's row replaced.
  HousingMarket with_row(AgentIndex agent,
                         std::span<const AgentIndex> row) const;

  std::vector<std::vector<AgentIndex>> rows() const;

  bool operator==(const HousingMarket& other) const {
    return names_ == other.names_ && prefs_ == other.prefs_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::string> names_;
  std::vector<AgentIndex> prefs_;
  std::vector<std::int32_t> ranks_;
  std::unordered_map<std::string, AgentIndex> lookup_;
};

// Resolves names to indices and checks every row. Errors name the offending
// agent and the 1-based position in its row.
HousingMarket validate_market(const RawMarket& raw);

// Checked rank lookup; throws std::out_of_range for an unknown agent/house.
int rank(const HousingMarket& market, AgentIndex agent, AgentIndex house);

// Default labels: a..z for n <= 26, otherwise x1..xn.
std::vector<std::string> default_agent_names(std::size_t n);

// A permutation of the endowment: assign[i] is the house agent i receives.
class Allocation {
 public:
  Allocation() = default;
  // Throws std::invalid_argument unless `assign` is a permutation.
  explicit Allocation(std::vector<AgentIndex> assign);

  static Allocation identity(std::size_t n);

  std::size_t size() const noexcept { return assign_.size(); }
  AgentIndex operator[](AgentIndex i) const { return assign_[i]; }
  std::span<const AgentIndex> houses() const noexcept { return assign_; }

  auto operator<=>(const Allocation&) const = default;

 private:
  std::vector<AgentIndex> assign_;
};

bool is_permutation_of_indices(std::span<const AgentIndex> values);

}  // namespace sslab
