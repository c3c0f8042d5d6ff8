#include "cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "sslab/io.hpp"
#include "sslab/random_markets.hpp"
#include "sslab/verify.hpp"

namespace sslab {

namespace {

struct GlobalOptions {
  std::string out;
  std::string witness;
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  bool quiet = false;
};

// Raised after a witness has been dumped; maps to kExitInvariant.
struct InvariantViolation {
  std::string message;
  Json witness;
};

class Session {
 public:
  Session(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
      : out_(out), err_(err) {
    command_line_ = "sslab";
    for (const auto& a : args) command_line_ += " " + a;
  }

  GlobalOptions global;

  Json provenance(bool seeded) const {
    return provenance_json(command_line_, seeded ? std::optional(global.seed) : std::nullopt);
  }

  // Generator block for instance files: no timestamp, so identical commands
  // give identical files.
  Json generator(bool seeded) const {
    return Json{{"tool", kToolName},
                {"version", kToolVersion},
                {"command", command_line_},
                {"seed", seeded ? Json(global.seed) : Json(nullptr)}};
  }

  void emit(const std::string& text) const {
    if (global.out.empty()) {
      out_ << text;
      return;
    }
    std::ofstream file(global.out, std::ios::binary);
    if (!file) throw InputError("cannot write " + global.out);
    file << text;
    if (!global.quiet) err_ << "wrote " << global.out << '\n';
  }

  void emit(const Json& doc) const { emit(doc.dump(2) + "\n"); }

  void dump_witness(const InvariantViolation& v) const {
    err_ << "invariant violation: " << v.message << '\n';
    const std::string text = v.witness.dump(2) + "\n";
    if (!global.witness.empty()) {
      std::ofstream file(global.witness, std::ios::binary);
      file << text;
      err_ << "witness written to " << global.witness << '\n';
    } else {
      err_ << text;
    }
  }

  std::ostream& err() const { return err_; }

 private:
  std::ostream& out_;
  std::ostream& err_;
  std::string command_line_;
};

// Provenance block first, then the fields of `body`.
Json with_provenance(Json provenance, const Json& body) {
  Json doc{{"provenance", std::move(provenance)}};
  for (const auto& [key, value] : body.items()) doc[key] = value;
  return doc;
}

void cmd_solve(Session& s, const std::string& input, bool with_trace) {
  const auto market = to_market(load_instance(input));
  const auto result = ttc_solve(market);
  Json doc{{"provenance", s.provenance(false)},
           {"allocation", allocation_json(market, result.allocation)}};
  if (with_trace) doc["trace"] = trace_json(market, result.trace);
  s.emit(doc);
}

void cmd_integrate(Session& s, const std::string& input, const std::string& format) {
  const auto ehm = to_ehm(load_instance(input));
  const auto scheme = solve_scheme(ehm);
  const auto report = analyze(ehm, scheme);
  if (!check_cycle_bound(report).holds) {
    throw InvariantViolation{"harmed agents exceed n_j - t_j in some community",
                             instance_json(ehm)};
  }
  if (format == "csv") {
    s.emit(integration_csv(ehm, report));
    return;
  }
  Json doc = with_provenance(s.provenance(false), integration_json(ehm, scheme, report));
  if (ehm.community_count() >= 2) {
    const auto ext = verify_extremal(ehm);
    if (ext.harmed_slack < 0 || ext.gamma_slack < Rational(0)) {
      throw InvariantViolation{"worst-case bound exceeded", instance_json(ehm)};
    }
    doc["extremal"] = extremal_json(ext);
  }
  s.emit(doc);
}

void emit_instance(Session& s, const ExtendedHousingMarket& ehm, bool seeded) {
  Json doc = instance_json(ehm);
  doc["generator"] = s.generator(seeded);
  s.emit(doc);
}

void cmd_gen_worst(Session& s, std::size_t n, std::size_t k,
                   const std::vector<std::size_t>& sizes) {
  emit_instance(s, build_worst_case({n, k, sizes}), false);
}

void cmd_sample(Session& s, const std::vector<std::size_t>& sizes, bool sdd) {
  if (sizes.empty()) throw InputError("--sizes is required");
  for (std::size_t size : sizes) {
    if (size == 0) throw InputError("community sizes must be positive");
  }
  emit_instance(s, sdd ? sample_sdd_profile(sizes, s.global.seed) : sample_ehm(sizes, s.global.seed),
                true);
}

SimulationConfig simulation_config(const std::string& config_path, const CLI::App& sub,
                                   const std::vector<std::size_t>& sizes, std::size_t trials,
                                   const Session& s, const CLI::App& root) {
  SimulationConfig config;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw InputError("cannot open " + config_path);
    try {
      const Json doc = Json::parse(in);
      if (doc.contains("sizes")) config.sizes = doc["sizes"].get<std::vector<std::size_t>>();
      if (doc.contains("trials")) config.trials = doc["trials"].get<std::size_t>();
      if (doc.contains("seed")) config.seed = doc["seed"].get<std::uint64_t>();
      if (doc.contains("threads")) config.threads = doc["threads"].get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
      throw InputError("bad simulation config: " + std::string(e.what()));
    }
  }
  if (sub.count("--sizes") > 0) config.sizes = sizes;
  if (sub.count("--trials") > 0) config.trials = trials;
  if (root.count("--seed") > 0 || config_path.empty()) config.seed = s.global.seed;
  if (root.count("--threads") > 0 || config_path.empty()) config.threads = s.global.threads;
  if (config.sizes.empty()) throw InputError("--sizes is required");
  return config;
}

void cmd_simulate(Session& s, const SimulationConfig& config, const std::string& format) {
  const auto summary = run_simulation(config);
  if (summary.cycle_bound_violations > 0) {
    const auto t = *summary.first_violation_trial;
    throw InvariantViolation{
        "harmed agents exceed n_j - t_j in trial " + std::to_string(t),
        instance_json(sample_ehm(config.sizes, trial_seed(config.seed, t)))};
  }
  if (format == "csv") {
    s.emit(summary_csv(summary));
    return;
  }
  s.emit(with_provenance(s.provenance(true), summary_json(summary)));
}

void cmd_check_sdd(Session& s, const std::string& input) {
  const auto ehm = to_ehm(load_instance(input));
  const auto diagnostic = sdd_diagnostic(ehm);
  Json doc{{"provenance", s.provenance(false)}, {"domain", sdd_json(ehm, diagnostic)}};
  if (diagnostic.satisfied) {
    const auto bound = verify_sdd_bound(ehm);
    if (!bound.holds) {
      throw InvariantViolation{"domain bound fails on an in-domain profile", instance_json(ehm)};
    }
    doc["bound"] = sdd_bound_json(bound);
  } else {
    doc["bound"] = nullptr;
  }
  s.emit(doc);
}

struct VerifyOptions {
  std::string suite;
  std::optional<std::size_t> max_n;
  std::optional<std::size_t> samples;
};

void cmd_verify(Session& s, const VerifyOptions& v) {
  const auto threads = s.global.threads;
  const auto seed = s.global.seed;
  SuiteReport report;
  if (v.suite == "lemmas") {
    report = verify_exhaustive(v.max_n.value_or(4), {true, false, false}, threads);
    report.suite = "lemmas";
  } else if (v.suite == "bounds") {
    report = verify_exhaustive(v.max_n.value_or(4), {false, true, false}, threads);
    report.merge(verify_worst_case_grid(10, {{100, 2}, {100, 3}, {100, 5}}));
    report.suite = "bounds";
  } else if (v.suite == "rsd") {
    report = verify_rsd(3, v.max_n.value_or(5), v.samples.value_or(100), seed, threads);
  } else if (v.suite == "sdd") {
    report = verify_sdd(v.samples.value_or(10000), 3, 10, seed, threads);
    report.merge(verify_exhaustive(v.max_n.value_or(4), {false, false, true}, threads));
  } else if (v.suite == "core") {
    report = verify_core_oracle(v.max_n.value_or(3), v.samples.value_or(10000), 4, 7, seed,
                                threads);
  } else if (v.suite == "sp") {
    report = verify_strategy_proofness(v.max_n.value_or(3), 4, 6, v.samples.value_or(100), 1000,
                                       seed, threads);
  } else {
    throw InputError("unknown suite " + v.suite);
  }
  s.emit(with_provenance(s.provenance(true), suite_json(report)));
  if (!report.passed()) {
    const auto& f = report.failures.front();
    throw InvariantViolation{f.check + ": " + f.detail, f.witness};
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Session session(args, out, err);
  auto& g = session.global;

  CLI::App app{"Housing markets with communities: solve, integrate, generate, simulate, verify",
               kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  app.add_option("--out", g.out, "Write the result to this file instead of stdout");
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--threads", g.threads, "Worker threads, 0 = all cores");
  app.add_flag("--quiet", g.quiet, "Suppress progress messages");
  app.add_option("--witness", g.witness, "File receiving the witness of a violated invariant");

  std::string input;
  bool with_trace = false;
  auto* solve = app.add_subcommand("solve", "Core allocation by top trading cycles");
  solve->add_option("--input", input, "Instance file")->required();
  solve->add_flag("--trace", with_trace, "Include the cycle trace");

  std::string report_format = "json";
  auto* integrate = app.add_subcommand("integrate", "Segregated vs integrated report");
  integrate->add_option("--input", input, "Instance file with communities")->required();
  integrate->add_option("--report", report_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  std::size_t n = 0, k = 0;
  std::vector<std::size_t> sizes;
  auto* gen = app.add_subcommand("gen-worst", "Worst-case instance for n agents in k communities");
  gen->add_option("--n", n, "Agents")->required();
  gen->add_option("--k", k, "Communities")->required();
  gen->add_option("--sizes", sizes, "Community sizes, comma separated")->delimiter(',');

  bool sdd = false;
  auto* sample = app.add_subcommand("sample", "Random instance with uniform preferences");
  sample->add_option("--sizes", sizes, "Community sizes, comma separated")
      ->delimiter(',')
      ->required();
  sample->add_flag("--sdd", sdd, "Sample from the sequential dual dictator domain");

  std::size_t trials = 1000;
  std::string config_path;
  std::string format = "json";
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo integration effects");
  simulate->add_option("--sizes", sizes, "Community sizes, comma separated")->delimiter(',');
  simulate->add_option("--trials", trials, "Number of trials");
  simulate->add_option("--config", config_path, "JSON config with sizes, trials, seed, threads");
  simulate->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* check_sdd = app.add_subcommand("check-sdd", "Domain diagnostic and harm bound");
  check_sdd->add_option("--input", input, "Instance file with communities")->required();

  VerifyOptions verify_options;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", verify_options.suite, "lemmas, bounds, rsd, sdd, core or sp")
      ->required();
  verify->add_option("--max-n", verify_options.max_n, "Largest exhaustive market size");
  verify->add_option("--samples", verify_options.samples, "Sampled instances");

  std::vector<const char*> argv{kToolName};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*solve) {
      cmd_solve(session, input, with_trace);
    } else if (*integrate) {
      cmd_integrate(session, input, report_format);
    } else if (*gen) {
      cmd_gen_worst(session, n, k, sizes);
    } else if (*sample) {
      cmd_sample(session, sizes, sdd);
    } else if (*simulate) {
      cmd_simulate(session,
                   simulation_config(config_path, *simulate, sizes, trials, session, app),
                   format);
    } else if (*check_sdd) {
      cmd_check_sdd(session, input);
    } else if (*verify) {
      cmd_verify(session, verify_options);
    }
  } catch (const InvariantViolation& v) {
    session.dump_witness(v);
    return kExitInvariant;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InstanceTooLarge& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace sslab
