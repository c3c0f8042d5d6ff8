#include "sslab/ttc.hpp"

#include <algorithm>
#include <numeric>

namespace sslab {

std::size_t TtcTrace::cycle_count() const noexcept {
  std::size_t total = 0;
  for (const auto& it : iterations) total += it.size();
  return total;
}

std::vector<std::size_t> TtcTrace::cycle_lengths() const {
  std::vector<std::size_t> out;
  for (const auto& it : iterations) {
    for (const auto& c : it) out.push_back(c.size());
  }
  return out;
}

std::size_t TtcTrace::max_cycle_length() const noexcept {
  std::size_t best = 0;
  for (const auto& it : iterations) {
    for (const auto& c : it) best = std::max(best, c.size());
  }
  return best;
}

TtcResult ttc_solve(const HousingMarket& market) {
  return ttc_solve(market, {});
}

TtcResult ttc_solve(const HousingMarket& market,
                    std::span<const AgentIndex> endowment) {
  const std::size_t n = market.size();
  std::vector<AgentIndex> holds(n);
  if (endowment.empty()) {
    std::iota(holds.begin(), holds.end(), 0);
  } else {
    if (endowment.size() != n || !is_permutation_of_indices(endowment)) {
      throw std::invalid_argument("endowment is not a permutation");
    }
    holds.assign(endowment.begin(), endowment.end());
  }
  std::vector<AgentIndex> owner(n);
  for (std::size_t i = 0; i < n; ++i) owner[holds[i]] = static_cast<AgentIndex>(i);

  std::vector<char> active(n, 1);
  std::vector<int> cursor(n, 0);
  std::vector<AgentIndex> points_to(n);
  // Walk stamp: 0 = unvisited this iteration, otherwise 1 + start agent.
  std::vector<AgentIndex> stamp(n);
  std::vector<AgentIndex> assign(n, -1);
  std::vector<AgentIndex> alive(n);
  std::iota(alive.begin(), alive.end(), 0);

  TtcTrace trace;
  std::vector<AgentIndex> path;
  while (!alive.empty()) {
    for (AgentIndex i : alive) {
      auto prefs = market.preferences(i);
      int& c = cursor[i];
      while (!active[owner[prefs[c]]]) ++c;
      points_to[i] = owner[prefs[c]];
      stamp[i] = 0;
    }

    std::vector<TradingCycle> cycles;
    for (AgentIndex s : alive) {
      if (stamp[s] != 0) continue;
      path.clear();
      AgentIndex x = s;
      while (stamp[x] == 0) {
        stamp[x] = s + 1;
        path.push_back(x);
        x = points_to[x];
      }
      if (stamp[x] != s + 1) continue;  // ran into an earlier walk
      auto first = std::find(path.begin(), path.end(), x);
      TradingCycle cycle(first, path.end());
      std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()),
                  cycle.end());
      cycles.push_back(std::move(cycle));
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const TradingCycle& a, const TradingCycle& b) { return a[0] < b[0]; });

    for (const auto& cycle : cycles) {
      for (AgentIndex i : cycle) {
        assign[i] = holds[points_to[i]];
        active[i] = 0;
      }
    }
    std::erase_if(alive, [&](AgentIndex i) { return !active[i]; });
    trace.iterations.push_back(std::move(cycles));
  }
  return {Allocation(std::move(assign)), std::move(trace)};
}

Allocation allocation_from_trace(const TtcTrace& trace, std::size_t n,
                                 std::span<const AgentIndex> endowment) {
  std::vector<AgentIndex> assign(n, -1);
  for (const auto& iteration : trace.iterations) {
    for (const auto& cycle : iteration) {
      for (std::size_t m = 0; m < cycle.size(); ++m) {
        const AgentIndex next = cycle[(m + 1) % cycle.size()];
        assign.at(cycle[m]) = endowment.empty() ? next : endowment[next];
      }
    }
  }
  return Allocation(std::move(assign));
}

bool misreport_is_profitable(const HousingMarket& truth, AgentIndex agent,
                             std::span<const AgentIndex> reported_row) {
  const AgentIndex honest = ttc_solve(truth).allocation[agent];
  const AgentIndex gamed = ttc_solve(truth.with_row(agent, reported_row)).allocation[agent];
  return truth.prefers(agent, gamed, honest);
}

}  // namespace sslab
