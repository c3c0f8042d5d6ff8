#include "sslab/worst_case.hpp"

#include <numeric>

namespace sslab {

namespace {

std::vector<std::size_t> resolve_sizes(const WorstCaseSpec& spec) {
  if (spec.k < 2) throw InputError("worst-case construction needs k >= 2");
  if (spec.n < spec.k) throw InputError("worst-case construction needs n >= k");
  if (spec.sizes.empty()) {
    std::vector<std::size_t> sizes(spec.k, spec.n / spec.k);
    for (std::size_t j = 0; j < spec.n % spec.k; ++j) ++sizes[j];
    return sizes;
  }
  if (spec.sizes.size() != spec.k) {
    throw InputError("expected " + std::to_string(spec.k) + " community sizes");
  }
  for (std::size_t s : spec.sizes) {
    if (s == 0) throw InputError("community sizes must be positive");
  }
  if (std::accumulate(spec.sizes.begin(), spec.sizes.end(), std::size_t{0}) != spec.n) {
    throw InputError("community sizes do not sum to n");
  }
  return spec.sizes;
}

}  // namespace

ExtendedHousingMarket build_worst_case(const WorstCaseSpec& spec) {
  const auto sizes = resolve_sizes(spec);
  const std::size_t n = spec.n;
  const std::size_t k = spec.k;

  std::vector<AgentIndex> first(k), last(k);
  std::vector<std::vector<AgentIndex>> communities(k);
  std::vector<char> in_x(n, 0);
  AgentIndex next = 0;
  for (std::size_t j = 0; j < k; ++j) {
    first[j] = next;
    for (std::size_t m = 0; m < sizes[j]; ++m) communities[j].push_back(next++);
    last[j] = next - 1;
    in_x[first[j]] = 1;
  }

  std::vector<std::vector<AgentIndex>> rows(n);
  std::vector<char> placed(n);
  auto append = [&](std::vector<AgentIndex>& row, AgentIndex h) {
    if (!placed[h]) {
      placed[h] = 1;
      row.push_back(h);
    }
  };

  for (std::size_t j = 0; j < k; ++j) {
    auto& row = rows[first[j]];
    std::fill(placed.begin(), placed.end(), 0);
    append(row, first[(j + 1) % k]);
    append(row, last[j]);  // own house when the community is a singleton
    for (std::size_t h = 0; h < n; ++h) append(row, static_cast<AgentIndex>(h));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (in_x[i]) continue;
    auto& row = rows[i];
    std::fill(placed.begin(), placed.end(), 0);
    append(row, static_cast<AgentIndex>(i - 1));
    for (std::size_t j = 0; j < k; ++j) append(row, first[j]);
    for (std::size_t h = 0; h < n; ++h) {
      if (!in_x[h]) append(row, static_cast<AgentIndex>(h));
    }
  }
  return ExtendedHousingMarket(HousingMarket(default_agent_names(n), std::move(rows)),
                               std::move(communities));
}

Rational worst_case_gamma_bar(std::int64_t n, std::int64_t k) {
  if (k < 1 || n < 1) throw std::invalid_argument("need 1 <= k <= n");
  if (k > n) throw std::invalid_argument("k exceeds n");
  return Rational(-n * n + n + k * k + k, 2 * n * n);
}

ExtremalReport verify_extremal(const ExtendedHousingMarket& ehm) {
  const auto report = analyze(ehm, solve_scheme(ehm));
  const auto n = static_cast<std::int64_t>(ehm.size());
  const auto k = static_cast<std::int64_t>(ehm.community_count());
  ExtremalReport out;
  out.harmed = report.harmed.size();
  out.harmed_bound = static_cast<std::size_t>(n - k);
  out.harmed_extremal = out.harmed == out.harmed_bound;
  out.harmed_slack = n - k - static_cast<std::int64_t>(out.harmed);
  out.gamma_bar = report.gamma_bar;
  out.gamma_bound = worst_case_gamma_bar(n, k);
  out.gamma_extremal = out.gamma_bar == out.gamma_bound;
  out.gamma_slack = out.gamma_bar - out.gamma_bound;
  return out;
}

}  // namespace sslab
