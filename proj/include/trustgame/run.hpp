#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "trustgame/scenario.hpp"

namespace trustgame {

inline constexpr const char* kToolVersion = "1.0.0";

// Exit codes shared by the library drivers and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNoConverge = 2;

struct RunResult {
  int exit_code = kExitOk;
  nlohmann::json summary;
};

// Execute a finalized scenario: writes manifest.json, results.csv,
// summary.json, summary.txt (and plots where the mode produces them) into
// scenario.output_dir. Configuration problems surface as exceptions from
// scenario finalization; solver non-convergence maps to exit code 2.
RunResult run_scenario(const Scenario& scenario);

// Build the preset scenario for one of the reproduction figures
// (entrant | n-sweep | maneuver-compare) and run it.
RunResult reproduce(const std::string& figure, const std::string& output_dir);

// Reload the scenario recorded in a manifest written by run_scenario.
Scenario scenario_from_manifest(const std::filesystem::path& manifest_path);

}  // namespace trustgame
