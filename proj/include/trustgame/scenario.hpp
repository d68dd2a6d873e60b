#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "trustgame/core.hpp"

namespace trustgame {

enum class Mode { Static, Dynamic, Abm, Maneuver, Sweep, Reproduce };

std::string mode_name(Mode mode);
Mode parse_mode(const std::string& name);

struct AbmBlock {
  int users = 10000;
  double dt = 0.01;
  int runs = 20;
};

struct SweepBlock {
  std::string param;  // one of: n, p, q, r
  std::vector<double> grid;
};

// A fully resolved run description. Built from defaults, then a scenario
// file, then CLI overrides (flag > file > default).
struct Scenario {
  Mode mode = Mode::Static;
  GameConfig config;
  AbmBlock abm;
  SweepBlock sweep;
  std::vector<double> target_beta;
  std::vector<double> alpha_list;  // abm mode: constant controls (default: static NE)
  std::string figure;  // reproduce mode: entrant | n-sweep | maneuver-compare
  std::string output_dir = "out";

  // Keys explicitly provided by file or flags; lets solvers distinguish a
  // deliberate override from a default.
  std::set<std::string> explicit_keys;

  // Raw per-node parameter lists as given; folded into config.params by
  // finalize() (scalars broadcast across nodes).
  std::vector<double> p_list{0.4};
  std::vector<double> q_list{0.2};
  std::vector<double> r_list{0.2};

  // Apply one key=value assignment; throws ConfigError on unknown keys or
  // malformed values.
  void set(const std::string& key, const std::string& value);

  // Broadcast scalar parameters across nodes, fill defaults, validate.
  void finalize();

  // Key-value form that reproduces this scenario exactly.
  std::map<std::string, std::string> to_keyvals() const;
};

// Parse a strict key = value scenario file; '#' starts a comment. Unknown
// keys are rejected with the offending line number.
Scenario parse_scenario_file(const std::filesystem::path& path);

// Parse scenario text (same grammar) from a string; `origin` labels errors.
Scenario parse_scenario_text(const std::string& text, const std::string& origin);

}  // namespace trustgame
