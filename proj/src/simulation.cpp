#include "sslab/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "sslab/integration.hpp"
#include "sslab/random_markets.hpp"

namespace sslab {

namespace {

constexpr std::size_t kMaxAgents = 20000;
constexpr std::size_t kMaxTrials = 100'000'000;

struct TrialRecord {
  std::vector<double> gain_ranks, gain_percentile, benefited, harmed, unaffected, cycles;
  double fraction_benefited = 0, fraction_harmed = 0, fraction_unaffected = 0;
  double segregated_rank_sum = 0, integrated_rank_sum = 0, integrated_cycles = 0;
  bool cycle_bound_ok = true;
};

TrialRecord run_trial(const SimulationConfig& config, std::size_t t) {
  const auto ehm = sample_ehm(config.sizes, trial_seed(config.seed, t));
  const auto report = analyze(ehm, solve_scheme(ehm));
  const double n = static_cast<double>(report.n);
  TrialRecord r;
  for (const auto& c : report.communities) {
    const double nj = static_cast<double>(c.size);
    r.gain_ranks.push_back(static_cast<double>(c.total_gain) / nj);
    r.gain_percentile.push_back(static_cast<double>(c.total_gain) / (n * nj));
    r.benefited.push_back(static_cast<double>(c.benefited.size()));
    r.harmed.push_back(static_cast<double>(c.harmed.size()));
    r.unaffected.push_back(static_cast<double>(c.unaffected.size()));
    r.cycles.push_back(static_cast<double>(c.segregated_cycles));
  }
  r.fraction_benefited = static_cast<double>(report.benefited.size()) / n;
  r.fraction_harmed = static_cast<double>(report.harmed.size()) / n;
  r.fraction_unaffected = static_cast<double>(report.unaffected.size()) / n;
  r.segregated_rank_sum = std::accumulate(report.segregated_rank.begin(),
                                          report.segregated_rank.end(), 0.0);
  r.integrated_rank_sum = std::accumulate(report.integrated_rank.begin(),
                                          report.integrated_rank.end(), 0.0);
  r.integrated_cycles = static_cast<double>(report.integrated_cycles);
  r.cycle_bound_ok = check_cycle_bound(report).holds;
  return r;
}

}  // namespace

Moments moments(const std::vector<double>& values) {
  Moments m;
  if (values.empty()) return m;
  const double count = static_cast<double>(values.size());
  m.mean = std::accumulate(values.begin(), values.end(), 0.0) / count;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - m.mean) * (v - m.mean);
    m.sd = std::sqrt(ss / (count - 1.0));
    m.se = *m.sd / std::sqrt(count);
  }
  return m;
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t t) noexcept {
  return derive_seed(master, t);
}

SimulationSummary run_simulation(const SimulationConfig& config) {
  if (config.trials == 0) throw InputError("trial count must be at least 1");
  if (config.trials > kMaxTrials) throw InputError("trial count exceeds resource cap");
  if (config.sizes.empty()) throw InputError("at least one community size is required");
  for (std::size_t s : config.sizes) {
    if (s == 0) throw InputError("community sizes must be positive");
  }
  const std::size_t n =
      std::accumulate(config.sizes.begin(), config.sizes.end(), std::size_t{0});
  if (n > kMaxAgents) throw InputError("market size exceeds resource cap");

  std::vector<TrialRecord> records(config.trials);
  std::size_t workers = config.threads == 0 ? std::thread::hardware_concurrency()
                                            : config.threads;
  workers = std::clamp<std::size_t>(workers, 1, config.trials);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      for (std::size_t t = next++; t < config.trials; t = next++) {
        records[t] = run_trial(config, t);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  SimulationSummary summary;
  summary.config = config;
  const std::size_t k = config.sizes.size();
  std::vector<double> column(config.trials);
  auto collect = [&](auto&& field) {
    for (std::size_t t = 0; t < config.trials; ++t) column[t] = field(records[t]);
    return moments(column);
  };
  for (std::size_t j = 0; j < k; ++j) {
    CommunitySummary c;
    c.size = config.sizes[j];
    c.gain_ranks = collect([j](const TrialRecord& r) { return r.gain_ranks[j]; });
    c.gain_percentile = collect([j](const TrialRecord& r) { return r.gain_percentile[j]; });
    c.benefited = collect([j](const TrialRecord& r) { return r.benefited[j]; });
    c.harmed = collect([j](const TrialRecord& r) { return r.harmed[j]; });
    c.unaffected = collect([j](const TrialRecord& r) { return r.unaffected[j]; });
    c.cycles = collect([j](const TrialRecord& r) { return r.cycles[j]; });
    summary.communities.push_back(c);
  }
  summary.fraction_benefited = collect([](const TrialRecord& r) { return r.fraction_benefited; });
  summary.fraction_harmed = collect([](const TrialRecord& r) { return r.fraction_harmed; });
  summary.fraction_unaffected =
      collect([](const TrialRecord& r) { return r.fraction_unaffected; });
  summary.segregated_rank_sum =
      collect([](const TrialRecord& r) { return r.segregated_rank_sum; });
  summary.integrated_rank_sum =
      collect([](const TrialRecord& r) { return r.integrated_rank_sum; });
  summary.integrated_cycles = collect([](const TrialRecord& r) { return r.integrated_cycles; });
  for (std::size_t t = 0; t < config.trials; ++t) {
    if (!records[t].cycle_bound_ok) {
      ++summary.cycle_bound_violations;
      if (!summary.first_violation_trial) summary.first_violation_trial = t;
    }
  }
  return summary;
}

}  // namespace sslab
