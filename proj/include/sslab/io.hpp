#pragma once

// Instance and report file formats.
//
// Instance file (JSON):
//   {
//     "agents": ["a", "b", ...],                   unique, ^[A-Za-z0-9_-]+$
//     "preferences": {"a": ["d", "c", ...], ...},  best first, all n houses
//     "communities": [["a", "b", "c"], ...]        optional partition
//   }

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "sslab/integration.hpp"
#include "sslab/sdd.hpp"
#include "sslab/simulation.hpp"
#include "sslab/worst_case.hpp"

namespace sslab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "sslab";
inline constexpr const char* kToolVersion = "0.1.0";

struct InstanceFile {
  RawMarket market;
  std::optional<std::vector<std::vector<std::string>>> communities;
};

// Throws InputError describing the first schema problem found.
InstanceFile parse_instance(const Json& doc);
InstanceFile parse_instance_text(const std::string& text);
InstanceFile load_instance(const std::filesystem::path& path);

HousingMarket to_market(const InstanceFile& file);
// Requires "communities".
ExtendedHousingMarket to_ehm(const InstanceFile& file);

Json instance_json(const HousingMarket& market);
Json instance_json(const ExtendedHousingMarket& ehm);

Json rational_json(const Rational& value);
Json allocation_json(const HousingMarket& market, const Allocation& allocation);
Json trace_json(const HousingMarket& market, const TtcTrace& trace);
// Local-index trace of community j, printed with global names.
Json community_trace_json(const ExtendedHousingMarket& ehm, std::size_t j,
                          const TtcTrace& trace);

Json integration_json(const ExtendedHousingMarket& ehm, const MatchingScheme& scheme,
                      const IntegrationReport& report);
// One row per agent: id, community, segregated rank, integrated rank, gain, class.
std::string integration_csv(const ExtendedHousingMarket& ehm,
                            const IntegrationReport& report);

Json extremal_json(const ExtremalReport& report);

Json summary_json(const SimulationSummary& summary);
// One row per community: size, mean_gain_ranks, sd, se, mean_harmed,
// mean_benefited, mean_cycles.
std::string summary_csv(const SimulationSummary& summary);

Json sdd_json(const ExtendedHousingMarket& ehm, const SddDiagnostic& diagnostic);
Json sdd_bound_json(const SddBoundReport& report);

// Provenance block embedded in every result file. `generated_at` is the only
// field that changes between identical runs.
Json provenance_json(const std::string& command_line, std::optional<std::uint64_t> seed);

const char* effect_name(Effect effect);

}  // namespace sslab
