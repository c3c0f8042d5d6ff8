#include "sslab/io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>
#include <unordered_map>

namespace sslab {

namespace {

const std::regex& name_pattern() {
  static const std::regex pattern("^[A-Za-z0-9_-]+$");
  return pattern;
}

std::vector<std::string> string_array(const Json& value, const std::string& where) {
  if (!value.is_array()) throw InputError(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : value) {
    if (!item.is_string()) throw InputError(where + " must contain only strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

Json optional_number(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json moments_json(const Moments& m) {
  return Json{{"mean", m.mean}, {"sd", optional_number(m.sd)}, {"se", optional_number(m.se)}};
}

Json names_of(const HousingMarket& market, const std::vector<AgentIndex>& agents) {
  Json out = Json::array();
  for (AgentIndex i : agents) out.push_back(market.name(i));
  return out;
}

std::string csv_number(const std::optional<double>& v) {
  if (!v) return "";
  std::ostringstream os;
  os << std::setprecision(10) << *v;
  return os.str();
}

}  // namespace

InstanceFile parse_instance(const Json& doc) {
  if (!doc.is_object()) throw InputError("instance must be a JSON object");
  if (!doc.contains("agents")) throw InputError("instance is missing \"agents\"");
  if (!doc.contains("preferences")) throw InputError("instance is missing \"preferences\"");
  InstanceFile file;
  file.market.agents = string_array(doc["agents"], "\"agents\"");
  for (const auto& name : file.market.agents) {
    if (!std::regex_match(name, name_pattern())) {
      throw InputError("invalid agent name \"" + name + "\"");
    }
  }
  const auto& prefs = doc["preferences"];
  if (!prefs.is_object()) throw InputError("\"preferences\" must be an object");
  for (const auto& [agent, row] : prefs.items()) {
    file.market.preferences.emplace_back(
        agent, string_array(row, "preferences of agent " + agent));
  }
  if (doc.contains("communities")) {
    const auto& cs = doc["communities"];
    if (!cs.is_array()) throw InputError("\"communities\" must be an array of arrays");
    std::vector<std::vector<std::string>> communities;
    for (std::size_t j = 0; j < cs.size(); ++j) {
      communities.push_back(string_array(cs[j], "community " + std::to_string(j + 1)));
    }
    file.communities = std::move(communities);
  }
  return file;
}

InstanceFile parse_instance_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return parse_instance(doc);
}

InstanceFile load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance_text(buffer.str());
}

HousingMarket to_market(const InstanceFile& file) { return validate_market(file.market); }

ExtendedHousingMarket to_ehm(const InstanceFile& file) {
  if (!file.communities) throw InputError("instance has no \"communities\"");
  auto market = to_market(file);
  std::vector<std::vector<AgentIndex>> communities;
  for (std::size_t j = 0; j < file.communities->size(); ++j) {
    auto& c = communities.emplace_back();
    for (const auto& name : (*file.communities)[j]) {
      auto idx = market.index_of(name);
      if (!idx) {
        throw InputError("community " + std::to_string(j + 1) + " names unknown agent " +
                         name);
      }
      c.push_back(*idx);
    }
  }
  return ExtendedHousingMarket(std::move(market), std::move(communities));
}

Json instance_json(const HousingMarket& market) {
  Json doc;
  doc["agents"] = market.names();
  Json prefs = Json::object();
  for (std::size_t i = 0; i < market.size(); ++i) {
    const auto a = static_cast<AgentIndex>(i);
    Json row = Json::array();
    for (AgentIndex h : market.preferences(a)) row.push_back(market.name(h));
    prefs[market.name(a)] = std::move(row);
  }
  doc["preferences"] = std::move(prefs);
  return doc;
}

Json instance_json(const ExtendedHousingMarket& ehm) {
  Json doc = instance_json(ehm.market());
  Json communities = Json::array();
  for (const auto& c : ehm.communities()) {
    communities.push_back(names_of(ehm.market(), c));
  }
  doc["communities"] = std::move(communities);
  return doc;
}

Json rational_json(const Rational& value) {
  return Json{{"num", value.numerator()},
              {"den", value.denominator()},
              {"value", boost::rational_cast<double>(value)}};
}

Json allocation_json(const HousingMarket& market, const Allocation& allocation) {
  Json out = Json::object();
  for (std::size_t i = 0; i < allocation.size(); ++i) {
    const auto a = static_cast<AgentIndex>(i);
    out[market.name(a)] = market.name(allocation[a]);
  }
  return out;
}

Json trace_json(const HousingMarket& market, const TtcTrace& trace) {
  Json iterations = Json::array();
  for (const auto& it : trace.iterations) {
    Json cycles = Json::array();
    for (const auto& c : it) cycles.push_back(names_of(market, c));
    iterations.push_back(std::move(cycles));
  }
  return Json{{"iterations", std::move(iterations)},
              {"iteration_count", trace.iteration_count()},
              {"cycle_count", trace.cycle_count()},
              {"cycle_lengths", trace.cycle_lengths()}};
}

Json community_trace_json(const ExtendedHousingMarket& ehm, std::size_t j,
                          const TtcTrace& trace) {
  const auto members = ehm.community(j);
  TtcTrace global = trace;
  for (auto& it : global.iterations) {
    for (auto& c : it) {
      for (auto& a : c) a = members[a];
    }
  }
  return trace_json(ehm.market(), global);
}

const char* effect_name(Effect effect) {
  switch (effect) {
    case Effect::kBenefited: return "benefited";
    case Effect::kUnaffected: return "unaffected";
    case Effect::kHarmed: return "harmed";
  }
  return "unknown";
}

Json integration_json(const ExtendedHousingMarket& ehm, const MatchingScheme& scheme,
                      const IntegrationReport& report) {
  const auto& market = ehm.market();
  Json agents = Json::array();
  for (std::size_t i = 0; i < report.n; ++i) {
    const auto a = static_cast<AgentIndex>(i);
    agents.push_back(Json{{"id", market.name(a)},
                          {"community", ehm.community_of(a) + 1},
                          {"segregated_house", market.name(scheme.segregated_combined[a])},
                          {"integrated_house", market.name(scheme.integrated[a])},
                          {"segregated_rank", report.segregated_rank[i]},
                          {"integrated_rank", report.integrated_rank[i]},
                          {"gain", report.gain[i]},
                          {"class", effect_name(report.effect[i])}});
  }
  Json communities = Json::array();
  for (std::size_t j = 0; j < report.communities.size(); ++j) {
    const auto& c = report.communities[j];
    communities.push_back(Json{
        {"index", j + 1},
        {"size", c.size},
        {"total_gain", c.total_gain},
        {"gamma_bar", rational_json(c.gamma_bar)},
        {"benefited", names_of(market, c.benefited)},
        {"unaffected", names_of(market, c.unaffected)},
        {"harmed", names_of(market, c.harmed)},
        {"segregated_cycles", c.segregated_cycles},
        {"segregated_allocation", allocation_json(restrict_preferences(ehm, j),
                                                  scheme.segregated[j])},
        {"segregated_trace", community_trace_json(ehm, j, scheme.segregated_traces[j])}});
  }
  const auto bound = check_cycle_bound(report);
  return Json{{"n", report.n},
              {"k", ehm.community_count()},
              {"total_gain", report.total_gain},
              {"gamma_bar", rational_json(report.gamma_bar)},
              {"benefited", names_of(market, report.benefited)},
              {"unaffected", names_of(market, report.unaffected)},
              {"harmed", names_of(market, report.harmed)},
              {"segregated_cycles", report.total_segregated_cycles},
              {"integrated_cycles", report.integrated_cycles},
              {"cycle_bound", Json{{"holds", bound.holds}, {"margins", bound.margins}}},
              {"segregated", allocation_json(market, scheme.segregated_combined)},
              {"integrated", allocation_json(market, scheme.integrated)},
              {"integrated_trace", trace_json(market, scheme.integrated_trace)},
              {"communities", std::move(communities)},
              {"agents", std::move(agents)}};
}

std::string integration_csv(const ExtendedHousingMarket& ehm,
                            const IntegrationReport& report) {
  std::ostringstream os;
  os << "id,community,segregated_rank,integrated_rank,gain,class\n";
  for (std::size_t i = 0; i < report.n; ++i) {
    const auto a = static_cast<AgentIndex>(i);
    os << ehm.market().name(a) << ',' << ehm.community_of(a) + 1 << ','
       << report.segregated_rank[i] << ',' << report.integrated_rank[i] << ','
       << report.gain[i] << ',' << effect_name(report.effect[i]) << '\n';
  }
  return os.str();
}

Json extremal_json(const ExtremalReport& r) {
  return Json{{"harmed", r.harmed},
              {"harmed_bound", r.harmed_bound},
              {"harmed_extremal", r.harmed_extremal},
              {"harmed_slack", r.harmed_slack},
              {"gamma_bar", rational_json(r.gamma_bar)},
              {"gamma_bound", rational_json(r.gamma_bound)},
              {"gamma_extremal", r.gamma_extremal},
              {"gamma_slack", rational_json(r.gamma_slack)}};
}

Json summary_json(const SimulationSummary& s) {
  Json communities = Json::array();
  for (const auto& c : s.communities) {
    communities.push_back(Json{{"size", c.size},
                               {"gain_ranks", moments_json(c.gain_ranks)},
                               {"gain_percentile", moments_json(c.gain_percentile)},
                               {"benefited", moments_json(c.benefited)},
                               {"harmed", moments_json(c.harmed)},
                               {"unaffected", moments_json(c.unaffected)},
                               {"cycles", moments_json(c.cycles)}});
  }
  return Json{
      {"sizes", s.config.sizes},
      {"trials", s.config.trials},
      {"seed", s.config.seed},
      {"seed_rule", kTrialSeedRule},
      {"communities", std::move(communities)},
      {"fraction_benefited", moments_json(s.fraction_benefited)},
      {"fraction_harmed", moments_json(s.fraction_harmed)},
      {"fraction_unaffected", moments_json(s.fraction_unaffected)},
      {"segregated_rank_sum", moments_json(s.segregated_rank_sum)},
      {"integrated_rank_sum", moments_json(s.integrated_rank_sum)},
      {"integrated_cycles", moments_json(s.integrated_cycles)},
      {"cycle_bound_violations", s.cycle_bound_violations},
      {"first_violation_trial", s.first_violation_trial ? Json(*s.first_violation_trial)
                                                        : Json(nullptr)}};
}

std::string summary_csv(const SimulationSummary& s) {
  std::ostringstream os;
  os << "size,mean_gain_ranks,sd,se,mean_harmed,mean_benefited,mean_cycles\n";
  for (const auto& c : s.communities) {
    os << c.size << ',' << csv_number(c.gain_ranks.mean) << ','
       << csv_number(c.gain_ranks.sd) << ',' << csv_number(c.gain_ranks.se) << ','
       << csv_number(c.harmed.mean) << ',' << csv_number(c.benefited.mean) << ','
       << csv_number(c.cycles.mean) << '\n';
  }
  return os.str();
}

Json sdd_json(const ExtendedHousingMarket& ehm, const SddDiagnostic& d) {
  const auto& market = ehm.market();
  Json communities = Json::array();
  for (std::size_t j = 0; j < d.communities.size(); ++j) {
    Json ranks = Json::array();
    const auto& c = d.communities[j];
    for (std::size_t r = 0; r < c.q.size(); ++r) {
      ranks.push_back(Json{{"rank", r + 1},
                           {"q", names_of(market, c.q[r])},
                           {"Q", names_of(market, c.Q[r])},
                           {"Q_size", c.Q[r].size()}});
    }
    communities.push_back(Json{{"index", j + 1}, {"ranks", std::move(ranks)}});
  }
  Json violation = nullptr;
  if (d.first_violation) {
    violation = Json{{"community", d.first_violation->community + 1},
                     {"rank", d.first_violation->rank},
                     {"set", names_of(market, d.first_violation->set)},
                     {"size", d.first_violation->set.size()}};
  }
  return Json{{"satisfied", d.satisfied},
              {"first_violation", std::move(violation)},
              {"communities", std::move(communities)}};
}

Json sdd_bound_json(const SddBoundReport& report) {
  Json communities = Json::array();
  for (std::size_t j = 0; j < report.communities.size(); ++j) {
    const auto& c = report.communities[j];
    Json histogram = Json::object();
    for (const auto& [len, count] : c.cycle_length_histogram) {
      histogram[std::to_string(len)] = count;
    }
    communities.push_back(Json{{"index", j + 1},
                               {"size", c.size},
                               {"harmed", c.harmed},
                               {"segregated_cycles", c.segregated_cycles},
                               {"max_cycle_length", c.max_cycle_length},
                               {"cycle_length_histogram", std::move(histogram)},
                               {"harm_bound_holds", c.harm_bound_holds},
                               {"cycle_claim_holds", c.cycle_claim_holds},
                               {"cycle_route_holds", c.cycle_route_holds},
                               {"margin", rational_json(c.margin)}});
  }
  return Json{{"holds", report.holds}, {"communities", std::move(communities)}};
}

Json provenance_json(const std::string& command_line, std::optional<std::uint64_t> seed) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream stamp;
  stamp << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  return Json{{"tool", kToolName},
              {"version", kToolVersion},
              {"command", command_line},
              {"seed", seed ? Json(*seed) : Json(nullptr)},
              {"generated_at", stamp.str()}};
}

}  // namespace sslab
