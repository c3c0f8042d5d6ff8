#include "sslab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <sstream>
#include <thread>

#include "sslab/enumerate.hpp"
#include "sslab/oracles.hpp"
#include "sslab/random_markets.hpp"
#include "sslab/sdd.hpp"
#include "sslab/worst_case.hpp"

namespace sslab {

void SuiteReport::merge(SuiteReport other) {
  instances += other.instances;
  checks += other.checks;
  failure_count += other.failure_count;
  for (const auto& [check, count] : other.failures_by_check) failures_by_check[check] += count;
  for (auto& f : other.failures) {
    if (failures.size() >= kMaxRecordedFailures) break;
    failures.push_back(std::move(f));
  }
}

namespace {

class Recorder {
 public:
  explicit Recorder(SuiteReport& report) : report_(report) {}

  // Counts one check; on failure records the witness produced by `witness`.
  void expect(bool ok, const char* check, const std::function<std::string()>& detail,
              const std::function<Json()>& witness) {
    ++report_.checks;
    if (ok) return;
    ++report_.failure_count;
    ++report_.failures_by_check[check];
    if (report_.failures.size() < kMaxRecordedFailures) {
      report_.failures.push_back(CheckFailure{check, detail(), witness()});
    }
  }

 private:
  SuiteReport& report_;
};

std::size_t resolve_threads(std::size_t threads) {
  if (threads != 0) return threads;
  return std::max<unsigned>(1, std::thread::hardware_concurrency());
}

// Runs work(u) for u in [0, units) on a thread pool and merges the partial
// reports in unit order, so the result does not depend on scheduling.
SuiteReport run_units(const std::string& suite, std::size_t units, std::size_t threads,
                      const std::function<void(std::size_t, SuiteReport&)>& work) {
  std::vector<SuiteReport> parts(units);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t u = next++; u < units; u = next++) work(u, parts[u]);
  };
  const std::size_t count = std::min(resolve_threads(threads), std::max<std::size_t>(units, 1));
  if (count <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
  }
  SuiteReport report;
  report.suite = suite;
  for (auto& p : parts) report.merge(std::move(p));
  return report;
}

std::string rational_text(const Rational& r) {
  std::ostringstream os;
  os << r.numerator() << '/' << r.denominator();
  return os.str();
}

HousingMarket random_market(std::size_t n, std::uint64_t seed) {
  const std::size_t sizes[] = {n};
  return sample_ehm(sizes, seed).market();
}

void check_core_lemmas(const HousingMarket& market, const TtcResult& solved,
                       Recorder& rec, const std::function<Json()>& witness) {
  const std::size_t n = market.size();
  const auto& x = solved.allocation;
  bool ir = true;
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = static_cast<AgentIndex>(i);
    if (market.rank(a, x[a]) > market.rank(a, a)) ir = false;
  }
  rec.expect(ir, "core-individually-rational", [] { return std::string("an agent ranks its own house above its core house"); }, witness);
  const auto hist = rank_histogram(market, x);
  bool m_ok = true, big_m_ok = true;
  for (std::size_t r = 1; r <= n; ++r) {
    if (hist.m(static_cast<int>(r)) > n - r + 1) m_ok = false;
    if (hist.M(static_cast<int>(r)) > n - r + 1) big_m_ok = false;
  }
  rec.expect(m_ok, "rank-count-cap", [] { return std::string("m(r) > n - r + 1"); }, witness);
  rec.expect(big_m_ok, "rank-tail-cap", [] { return std::string("M(r) > n - r + 1"); }, witness);
  std::size_t total = 0;
  for (std::size_t len : solved.trace.cycle_lengths()) total += len;
  rec.expect(total == n && allocation_from_trace(solved.trace, n) == x, "trace-consistency",
             [] { return std::string("trace does not reproduce the allocation"); }, witness);
}

void check_ehm(const ExtendedHousingMarket& ehm, const ExhaustiveChecks& checks,
               Recorder& rec) {
  auto witness = [&ehm] { return instance_json(ehm); };
  if (checks.sdd && sdd_diagnostic(ehm).satisfied) {
    const auto bound = verify_sdd_bound(ehm);
    rec.expect(bound.holds, "sdd-harm-and-cycle-bound",
               [] { return std::string("sequential dual dictator bound violated"); }, witness);
  }
  if (!checks.lemmas && !checks.bounds) return;
  const auto scheme = solve_scheme(ehm);
  const auto report = analyze(ehm, scheme);
  const auto n = static_cast<std::int64_t>(ehm.size());
  const auto k = static_cast<std::int64_t>(ehm.community_count());
  if (checks.lemmas) {
    const auto bound = check_cycle_bound(report);
    rec.expect(bound.holds, "harmed-at-most-size-minus-cycles",
               [] { return std::string("|harmed in C_j| > n_j - t_j"); }, witness);
  }
  if (checks.bounds) {
    const auto harmed = static_cast<std::int64_t>(report.harmed.size());
    rec.expect(harmed <= n - k, "harmed-at-most-n-minus-k",
               [&] { return std::to_string(harmed) + " harmed > n - k = " + std::to_string(n - k); },
               witness);
    const auto floor = worst_case_gamma_bar(n, k);
    rec.expect(report.gamma_bar >= floor, "average-gain-lower-bound",
               [&] { return rational_text(report.gamma_bar) + " < " + rational_text(floor); },
               witness);
    rec.expect(report.gamma_bar > Rational(-1) && report.gamma_bar < Rational(1),
               "average-gain-open-interval", [] { return std::string("gamma_bar outside (-1, 1)"); },
               witness);
    bool classes_ok = report.benefited.size() + report.unaffected.size() +
                          report.harmed.size() == report.n;
    for (std::size_t i = 0; i < report.n; ++i) {
      const int g = report.gain[i];
      const Effect e = report.effect[i];
      if ((g > 0) != (e == Effect::kBenefited) || (g < 0) != (e == Effect::kHarmed)) {
        classes_ok = false;
      }
    }
    rec.expect(classes_ok, "classification", [] { return std::string("effect class disagrees with gain sign"); },
               witness);
    for (std::size_t j = 0; j < ehm.community_count(); ++j) {
      const bool blocked =
          find_blocking_coalition(ehm.market(), scheme.integrated, ehm.community(j)).has_value();
      rec.expect(!blocked, "community-cannot-block-integrated",
                 [j] { return "community " + std::to_string(j + 1) + " blocks the integrated allocation"; },
                 witness);
    }
  }
}

}  // namespace

SuiteReport verify_exhaustive(std::size_t max_n, const ExhaustiveChecks& checks,
                              std::size_t threads) {
  SuiteReport total;
  total.suite = "exhaustive";
  for (std::size_t n = 1; n <= max_n; ++n) {
    const auto perms = all_permutations(n);
    std::vector<std::vector<std::vector<AgentIndex>>> partitions;
    for_each_partition(n, [&](const auto& blocks) { partitions.push_back(blocks); });
    // One work unit per choice of the first agent's row.
    auto part = run_units("exhaustive", perms.size(), threads, [&](std::size_t u, SuiteReport& out) {
      Recorder rec(out);
      std::vector<std::vector<AgentIndex>> rows(n, perms[0]);
      rows[0] = perms[u];
      std::vector<std::size_t> digits(n, 0);
      digits[0] = u;
      const auto names = default_agent_names(n);
      while (true) {
        HousingMarket market(names, rows);
        ++out.instances;
        if (checks.lemmas) {
          const auto solved = ttc_solve(market);
          check_core_lemmas(market, solved, rec, [&market] { return instance_json(market); });
        }
        for (const auto& blocks : partitions) {
          check_ehm(ExtendedHousingMarket(market, blocks), checks, rec);
        }
        std::size_t pos = n;
        bool done = true;
        while (pos > 1) {
          --pos;
          if (++digits[pos] < perms.size()) {
            rows[pos] = perms[digits[pos]];
            done = false;
            break;
          }
          digits[pos] = 0;
          rows[pos] = perms[0];
        }
        if (done) break;
      }
    });
    total.merge(std::move(part));
  }
  return total;
}

SuiteReport verify_worst_case_grid(
    std::size_t max_n, const std::vector<std::pair<std::size_t, std::size_t>>& extra) {
  SuiteReport report;
  report.suite = "worst-case-grid";
  Recorder rec(report);
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t n = 2; n <= max_n; ++n) {
    for (std::size_t k = 2; k <= n; ++k) cells.emplace_back(n, k);
  }
  cells.insert(cells.end(), extra.begin(), extra.end());
  for (const auto& [n, k] : cells) {
    const auto ehm = build_worst_case({n, k, {}});
    auto witness = [&ehm] { return instance_json(ehm); };
    ++report.instances;
    const auto scheme = solve_scheme(ehm);
    const auto r = analyze(ehm, scheme);
    const auto cell = "(n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")";

    // Postconditions: segregated gives X rank 2 and the rest rank 1;
    // integrated gives X rank 1 and the rest exactly the ranks k+1..n.
    bool segregated_ok = true, x_top = true;
    std::vector<int> rest_ranks;
    for (std::size_t j = 0; j < ehm.community_count(); ++j) {
      const auto members = ehm.community(j);
      for (std::size_t m = 0; m < members.size(); ++m) {
        const auto i = static_cast<std::size_t>(members[m]);
        const bool in_x = m == 0;
        if (r.segregated_rank[i] != (in_x ? 2 : 1)) segregated_ok = false;
        if (in_x) {
          if (r.integrated_rank[i] != 1) x_top = false;
        } else {
          rest_ranks.push_back(r.integrated_rank[i]);
        }
      }
    }
    std::sort(rest_ranks.begin(), rest_ranks.end());
    std::vector<int> expected(n - k);
    std::iota(expected.begin(), expected.end(), static_cast<int>(k) + 1);
    rec.expect(segregated_ok, "worst-case-segregated-ranks", [&] { return cell; }, witness);
    rec.expect(x_top && rest_ranks == expected, "worst-case-integrated-ranks",
               [&] { return cell; }, witness);
    const auto ext = verify_extremal(ehm);
    rec.expect(ext.harmed_extremal, "worst-case-harmed-equals-n-minus-k",
               [&] { return cell + " harmed " + std::to_string(ext.harmed); }, witness);
    rec.expect(ext.gamma_extremal, "worst-case-average-gain-equals-bound",
               [&] { return cell + " " + rational_text(ext.gamma_bar) + " vs " + rational_text(ext.gamma_bound); },
               witness);
  }
  return report;
}

SuiteReport verify_core_oracle(std::size_t exhaustive_n, std::size_t samples,
                               std::size_t sample_min_n, std::size_t sample_max_n,
                               std::uint64_t seed, std::size_t threads) {
  auto check = [](const HousingMarket& market, Recorder& rec) {
    const auto ttc = ttc_solve(market).allocation;
    const auto core = brute_force_core(market);
    const auto strict = brute_force_strict_core(market);
    auto witness = [&] { return instance_json(market); };
    rec.expect(core.size() == 1 && core[0] == ttc, "core-equals-ttc",
               [&] { return "unblocked allocations: " + std::to_string(core.size()); }, witness);
    rec.expect(std::find(core.begin(), core.end(), ttc) != core.end(), "core-contains-ttc",
               [] { return std::string("TTC allocation is blocked"); }, witness);
    rec.expect(strict.size() == 1 && strict[0] == ttc, "strict-core-equals-ttc",
               [&] { return "weakly unblocked allocations: " + std::to_string(strict.size()); },
               witness);
  };
  SuiteReport report;
  report.suite = "core-oracle";
  for (std::size_t n = 1; n <= exhaustive_n; ++n) {
    const auto perms = all_permutations(n);
    report.merge(run_units("core-oracle", perms.size(), threads, [&](std::size_t u, SuiteReport& out) {
      Recorder rec(out);
      const auto names = default_agent_names(n);
      for_each_profile(n, [&](const auto& rows) {
        if (rows[0] != perms[u]) return;
        ++out.instances;
        check(HousingMarket(names, rows), rec);
      });
    }));
  }
  if (samples > 0 && sample_max_n >= sample_min_n) {
    const std::size_t span = sample_max_n - sample_min_n + 1;
    report.merge(run_units("core-oracle", samples, threads, [&](std::size_t s, SuiteReport& out) {
      Recorder rec(out);
      ++out.instances;
      check(random_market(sample_min_n + s % span, derive_seed(seed, s)), rec);
    }));
  }
  return report;
}

SuiteReport verify_strategy_proofness(std::size_t exhaustive_n, std::size_t sample_min_n,
                                      std::size_t sample_max_n, std::size_t profiles,
                                      std::size_t deviations, std::uint64_t seed,
                                      std::size_t threads) {
  auto check = [](const HousingMarket& market, AgentIndex agent,
                  std::span<const AgentIndex> row, Recorder& rec) {
    rec.expect(!misreport_is_profitable(market, agent, row), "no-profitable-misreport",
               [&] { return "agent " + market.name(agent) + " gains by misreporting"; },
               [&] {
                 Json w = instance_json(market);
                 Json r = Json::array();
                 for (AgentIndex h : row) r.push_back(market.name(h));
                 w["misreport"] = Json{{"agent", market.name(agent)}, {"row", r}};
                 return w;
               });
  };
  SuiteReport report;
  report.suite = "strategy-proofness";
  for (std::size_t n = 1; n <= exhaustive_n; ++n) {
    const auto perms = all_permutations(n);
    report.merge(run_units("strategy-proofness", perms.size(), threads,
                           [&](std::size_t u, SuiteReport& out) {
      Recorder rec(out);
      const auto names = default_agent_names(n);
      for_each_profile(n, [&](const auto& rows) {
        if (rows[0] != perms[u]) return;
        ++out.instances;
        const HousingMarket market(names, rows);
        for (std::size_t a = 0; a < n; ++a) {
          for (const auto& row : perms) check(market, static_cast<AgentIndex>(a), row, rec);
        }
      });
    }));
  }
  if (profiles > 0 && sample_max_n >= sample_min_n) {
    const std::size_t span = sample_max_n - sample_min_n + 1;
    report.merge(run_units("strategy-proofness", profiles * span, threads,
                           [&](std::size_t s, SuiteReport& out) {
      Recorder rec(out);
      ++out.instances;
      const std::size_t n = sample_min_n + s % span;
      const auto market = random_market(n, derive_seed(seed, s));
      SplitMix64 rng(derive_seed(~seed, s));
      std::vector<AgentIndex> row(n);
      for (std::size_t d = 0; d < deviations; ++d) {
        const auto agent = static_cast<AgentIndex>(uniform_below(rng, n));
        std::iota(row.begin(), row.end(), 0);
        shuffle(row, rng);
        check(market, agent, row, rec);
      }
    }));
  }
  return report;
}

SuiteReport verify_rsd(std::size_t min_n, std::size_t max_n, std::size_t profiles,
                       std::uint64_t seed, std::size_t threads) {
  SuiteReport report;
  report.suite = "rsd";
  if (max_n < min_n) return report;
  const std::size_t span = max_n - min_n + 1;
  BruteForceLimits limits;
  limits.max_enumeration_n = std::max(limits.max_enumeration_n, max_n);
  report.merge(run_units("rsd", profiles * span, threads, [&](std::size_t s, SuiteReport& out) {
    Recorder rec(out);
    ++out.instances;
    const std::size_t n = min_n + s / profiles;
    const auto market = random_market(n, derive_seed(seed, s));
    rec.expect(rsd_equivalence_check(market, limits), "rsd-equivalence",
               [] { return std::string("random-endowment core and serial dictatorship distributions differ"); },
               [&] { return instance_json(market); });
  }));
  return report;
}

SuiteReport verify_sdd(std::size_t count, std::size_t max_k, std::size_t max_size,
                       std::uint64_t seed, std::size_t threads) {
  return run_units("sdd", count, threads, [&](std::size_t s, SuiteReport& out) {
    Recorder rec(out);
    ++out.instances;
    SplitMix64 rng(derive_seed(~seed, s));
    std::vector<std::size_t> sizes(1 + uniform_below(rng, max_k));
    for (auto& size : sizes) size = 1 + uniform_below(rng, max_size);
    const auto ehm = sample_sdd_profile(sizes, derive_seed(seed, s));
    auto witness = [&ehm] { return instance_json(ehm); };
    const bool in_domain = sdd_diagnostic(ehm).satisfied;
    rec.expect(in_domain, "sdd-generator-soundness",
               [] { return std::string("generated profile is outside the domain"); }, witness);
    if (!in_domain) return;
    const auto bound = verify_sdd_bound(ehm);
    bool harm = true, cycles = true, route = true;
    for (const auto& c : bound.communities) {
      harm = harm && c.harm_bound_holds;
      cycles = cycles && c.cycle_claim_holds;
      route = route && c.cycle_route_holds;
    }
    rec.expect(harm, "sdd-harmed-at-most-half", [] { return std::string("2 |harmed in C_j| > n_j"); }, witness);
    rec.expect(cycles, "sdd-cycles-at-most-two", [] { return std::string("segregated cycle longer than 2"); }, witness);
    rec.expect(route, "sdd-cycle-count-route", [] { return std::string("n_j - t_j route fails"); }, witness);
  });
}

Json suite_json(const SuiteReport& report) {
  Json failures = Json::array();
  for (const auto& f : report.failures) {
    failures.push_back(Json{{"check", f.check}, {"detail", f.detail}, {"witness", f.witness}});
  }
  return Json{{"suite", report.suite},
              {"passed", report.passed()},
              {"instances", report.instances},
              {"checks", report.checks},
              {"failure_count", report.failure_count},
              {"failures_by_check", report.failures_by_check},
              {"failures", std::move(failures)}};
}

}  // namespace sslab
