#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sslab/market.hpp"

namespace sslab {

// Agents of one trading cycle, starting at the lowest index and following
// pointers: members[m] receives the house held by members[m + 1] (cyclically).
using TradingCycle = std::vector<AgentIndex>;

// Record of a top-trading-cycles run. Every iteration removes all cycles of
// the current pointer graph; cycles inside an iteration are ordered by their
// lowest member.
struct TtcTrace {
  std::vector<std::vector<TradingCycle>> iterations;

  std::size_t iteration_count() const noexcept { return iterations.size(); }
  std::size_t cycle_count() const noexcept;
  std::vector<std::size_t> cycle_lengths() const;
  std::size_t max_cycle_length() const noexcept;
};

struct TtcResult {
  Allocation allocation;
  TtcTrace trace;
};

// Unique core allocation of the market (agent i endowed with house i).
TtcResult ttc_solve(const HousingMarket& market);

// TTC where the market's rows rank objects and agent i starts out holding
// object endowment[i]. The returned allocation maps agents to objects.
TtcResult ttc_solve(const HousingMarket& market,
                    std::span<const AgentIndex> endowment);

// Rebuilds the allocation implied by a trace, given the endowment that
// produced it (identity when empty).
Allocation allocation_from_trace(const TtcTrace& trace, std::size_t n,
                                 std::span<const AgentIndex> endowment = {});

// True when reporting `reported_row` instead of its true row gets `agent`
// a house it strictly prefers under its true ranking.
bool misreport_is_profitable(const HousingMarket& truth, AgentIndex agent,
                             std::span<const AgentIndex> reported_row);

}  // namespace sslab
