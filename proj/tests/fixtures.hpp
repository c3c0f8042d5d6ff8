#pragma once

#include <string>
#include <vector>

#include "sslab/io.hpp"

namespace sslab::testing {

inline std::string data_path(const std::string& name) {
  return std::string(SSLAB_TEST_DATA_DIR) + "/" + name;
}

inline ExtendedHousingMarket load_ehm(const std::string& name) {
  return to_ehm(load_instance(data_path(name)));
}

inline HousingMarket load_market(const std::string& name) {
  return to_market(load_instance(data_path(name)));
}

// Builds a market from rows of single-letter house names, one string per agent.
inline HousingMarket letters(const std::vector<std::string>& rows) {
  const auto names = default_agent_names(rows.size());
  std::vector<std::vector<AgentIndex>> out;
  for (const auto& row : rows) {
    auto& r = out.emplace_back();
    for (char c : row) r.push_back(static_cast<AgentIndex>(c - 'a'));
  }
  return HousingMarket(names, out);
}

// Allocation written as the houses received by a, b, c, ...
inline Allocation houses(const std::string& received) {
  std::vector<AgentIndex> out;
  for (char c : received) out.push_back(static_cast<AgentIndex>(c - 'a'));
  return Allocation(out);
}

}  // namespace sslab::testing
