#include "sslab/market.hpp"

#include <algorithm>
#include <sstream>

namespace sslab {

namespace {

std::string describe_row_error(const std::string& kind, const std::string& house,
                               const std::string& agent, std::size_t position) {
  std::ostringstream os;
  os << kind << " house " << house << " in row of agent " << agent
     << " at position " << position;
  return os.str();
}

}  // namespace

bool is_permutation_of_indices(std::span<const AgentIndex> values) {
  std::vector<char> seen(values.size(), 0);
  for (AgentIndex v : values) {
    if (v < 0 || static_cast<std::size_t>(v) >= values.size() || seen[v]) {
      return false;
    }
    seen[v] = 1;
  }
  return true;
}

HousingMarket::HousingMarket(std::vector<std::string> names,
                             std::vector<std::vector<AgentIndex>> rows)
    : n_(names.size()), names_(std::move(names)) {
  if (n_ == 0) throw InputError("empty market");
  if (rows.size() != n_) {
    throw InputError("expected " + std::to_string(n_) + " preference rows, got " +
                     std::to_string(rows.size()));
  }
  lookup_.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (!lookup_.emplace(names_[i], static_cast<AgentIndex>(i)).second) {
      throw InputError("duplicate agent " + names_[i]);
    }
  }
  prefs_.resize(n_ * n_);
  ranks_.assign(n_ * n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    const auto& row = rows[i];
    if (row.size() != n_) {
      throw InputError("row of agent " + names_[i] + " has " +
                       std::to_string(row.size()) + " houses, expected " +
                       std::to_string(n_));
    }
    for (std::size_t p = 0; p < n_; ++p) {
      const AgentIndex h = row[p];
      if (h < 0 || static_cast<std::size_t>(h) >= n_) {
        throw InputError("unknown house index " + std::to_string(h) +
                         " in row of agent " + names_[i] + " at position " +
                         std::to_string(p + 1));
      }
      int& slot = ranks_[i * n_ + h];
      if (slot != 0) {
        throw InputError(describe_row_error("duplicate", names_[h], names_[i], p + 1));
      }
      slot = static_cast<int>(p + 1);
      prefs_[i * n_ + p] = h;
    }
  }
}

std::optional<AgentIndex> HousingMarket::index_of(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

HousingMarket HousingMarket::with_row(AgentIndex agent,
                                      std::span<const AgentIndex> row) const {
  auto all = rows();
  all.at(agent).assign(row.begin(), row.end());
  return HousingMarket(names_, std::move(all));
}

std::vector<std::vector<AgentIndex>> HousingMarket::rows() const {
  std::vector<std::vector<AgentIndex>> out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    auto p = preferences(static_cast<AgentIndex>(i));
    out[i].assign(p.begin(), p.end());
  }
  return out;
}

HousingMarket validate_market(const RawMarket& raw) {
  if (raw.agents.empty()) throw InputError("empty market");
  std::unordered_map<std::string, AgentIndex> index;
  for (std::size_t i = 0; i < raw.agents.size(); ++i) {
    if (!index.emplace(raw.agents[i], static_cast<AgentIndex>(i)).second) {
      throw InputError("duplicate agent " + raw.agents[i]);
    }
  }
  const std::size_t n = raw.agents.size();
  std::vector<std::vector<AgentIndex>> rows(n);
  std::vector<char> has_row(n, 0);
  for (const auto& [agent, houses] : raw.preferences) {
    auto a = index.find(agent);
    if (a == index.end()) {
      throw InputError("preferences given for unknown agent " + agent);
    }
    if (has_row[a->second]) {
      throw InputError("duplicate preference row for agent " + agent);
    }
    has_row[a->second] = 1;
    std::vector<char> seen(n, 0);
    auto& row = rows[a->second];
    for (std::size_t p = 0; p < houses.size(); ++p) {
      auto h = index.find(houses[p]);
      if (h == index.end()) {
        throw InputError(describe_row_error("unknown", houses[p], agent, p + 1));
      }
      if (seen[h->second]) {
        throw InputError(describe_row_error("duplicate", houses[p], agent, p + 1));
      }
      seen[h->second] = 1;
      row.push_back(h->second);
    }
    for (std::size_t h = 0; h < n; ++h) {
      if (!seen[h]) {
        throw InputError(describe_row_error("missing", raw.agents[h], agent,
                                            houses.size() + 1));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!has_row[i]) {
      throw InputError("missing preference row for agent " + raw.agents[i]);
    }
  }
  return HousingMarket(raw.agents, std::move(rows));
}

int rank(const HousingMarket& market, AgentIndex agent, AgentIndex house) {
  if (!market.contains(agent)) {
    throw std::out_of_range("unknown agent index " + std::to_string(agent));
  }
  if (!market.contains(house)) {
    throw std::out_of_range("unknown house index " + std::to_string(house));
  }
  return market.rank(agent, house);
}

std::vector<std::string> default_agent_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (n <= 26) {
      names.emplace_back(1, static_cast<char>('a' + i));
    } else {
      names.push_back("x" + std::to_string(i + 1));
    }
  }
  return names;
}

Allocation::Allocation(std::vector<AgentIndex> assign) : assign_(std::move(assign)) {
  if (!is_permutation_of_indices(assign_)) {
    throw std::invalid_argument("allocation is not a permutation of the endowment");
  }
}

Allocation Allocation::identity(std::size_t n) {
  std::vector<AgentIndex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<AgentIndex>(i);
  return Allocation(std::move(v));
}

}  // namespace sslab
