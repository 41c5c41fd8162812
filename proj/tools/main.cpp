#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "qbs/scenario.hpp"

namespace {

// Exit codes: 0 expected outcome, 1 usage error, 2 invariant violation.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kViolation = 2;

int run_command(const qbs::scenario::ScenarioConfig& config,
                const std::string& out_path) {
  qbs::scenario::Json report;
  try {
    report = qbs::scenario::run_scenario(config);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  std::string rendered = config.format == "structured"
                             ? report.dump(2) + "\n"
                             : qbs::scenario::render_text(report);
  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kUsage;
    }
    out << rendered;
  }
  return report.at("expected_ok").get<bool>() ? kOk : kViolation;
}

int list_command() {
  for (const auto& entry : qbs::scenario::scenario_catalog()) {
    std::printf("%-20s %s\n", entry.id.c_str(), entry.summary.c_str());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Broadcasting multiple blind signature simulator"};
  app.require_subcommand(1);

  qbs::scenario::ScenarioConfig config;
  std::string out_path;

  auto* run = app.add_subcommand("run", "Run a scenario and report statistics");
  run->add_option("--scheme", config.scheme, "original or improved")
      ->capture_default_str();
  run->add_option("--scenario", config.scenario, "scenario id (see `list`)")
      ->capture_default_str();
  run->add_option("--n", config.n, "message length in bits")->capture_default_str();
  run->add_option("--t", config.t, "number of signatories")->capture_default_str();
  run->add_option("--l", config.l, "decoy pairs per channel setup")
      ->capture_default_str();
  run->add_option("--b", config.b,
                  "basis parameter, 0 < b < 1; 0 picks the scheme default");
  run->add_option("--trials", config.trials, "Monte-Carlo trials")
      ->capture_default_str();
  run->add_option("--seed", config.seed, "base RNG seed")->capture_default_str();
  run->add_option("--jobs", config.jobs, "worker threads, 0 = all cores")
      ->capture_default_str();
  run->add_option("--format", config.format, "text or structured")
      ->capture_default_str();
  run->add_option("--out", out_path, "write the report to a file instead of stdout");

  auto* list = app.add_subcommand("list", "List available scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  if (list->parsed()) return list_command();
  return run_command(config, out_path);
}
