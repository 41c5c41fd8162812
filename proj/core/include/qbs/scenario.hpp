#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qbs/attacks.hpp"

namespace qbs::scenario {

using Json = nlohmann::ordered_json;

struct ScenarioConfig {
  std::string scheme = "original";  // original | improved
  std::string scenario = "honest";  // honest | attack id | defense-suite
  int n = 8;
  int t = 3;
  int l = 16;
  double b = 0.0;  // 0 means the scheme default basis parameter
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  int jobs = 0;  // 0 means hardware concurrency
  std::string format = "text";  // text | structured
};

struct CatalogEntry {
  std::string id;
  std::string summary;
};

/// Every runnable scenario id with a one-line description.
std::vector<CatalogEntry> scenario_catalog();

/// Throws std::invalid_argument on a bad config.
void validate(const ScenarioConfig& config);

/// Runs the scenario and returns the structured report. The report carries
/// the config echo, one record per measured attack, the expected statistics
/// where the scenario has them, and an overall `expected_ok` verdict. The
/// same (config, seed) yields a byte-identical report.
Json run_scenario(const ScenarioConfig& config);

/// Human-readable rendering of a structured report.
std::string render_text(const Json& report);

}  // namespace qbs::scenario
