#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "trustgame/run.hpp"

namespace {

using trustgame::ConfigError;
using trustgame::Mode;
using trustgame::RunResult;
using trustgame::Scenario;

struct CommonArgs {
  std::string scenario_file;
  std::string output_dir;
  std::vector<std::string> overrides;  // key=value
  bool json = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("-s,--scenario", args.scenario_file, "scenario file to load");
  cmd->add_option("-o,--out", args.output_dir, "output directory");
  cmd->add_option("--set", args.overrides,
                  "override a scenario key, e.g. --set n=2 (repeatable)");
  cmd->add_flag("--json", args.json, "print the JSON summary to stdout");
}

Scenario build_scenario(const CommonArgs& args, Mode mode) {
  Scenario scenario;
  if (!args.scenario_file.empty()) {
    scenario = trustgame::parse_scenario_file(args.scenario_file);
  }
  scenario.mode = mode;  // the subcommand decides the mode
  for (const std::string& kv : args.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("--set expects key=value, got '" + kv + "'");
    }
    scenario.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!args.output_dir.empty()) scenario.output_dir = args.output_dir;
  scenario.finalize();
  return scenario;
}

int finish(const RunResult& result, bool json) {
  if (json) {
    std::cout << result.summary.dump(2) << std::endl;
  } else if (result.summary.contains("error")) {
    std::cerr << "error: " << result.summary["error"].get<std::string>() << std::endl;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trustgame: social-trust differential game solvers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("trustgame ") + trustgame::kToolVersion);

  struct Sub {
    const char* name;
    const char* help;
    Mode mode;
  };
  const Sub subs[] = {
      {"solve-static", "static Nash equilibrium of constant strategies", Mode::Static},
      {"solve-dynamic", "open-loop Nash trajectories via forward-backward sweeps",
       Mode::Dynamic},
      {"maneuver", "penalty parameters pinning malicious activity to a target",
       Mode::Maneuver},
      {"simulate-abm", "agent-based Monte Carlo validation of the trust ODE",
       Mode::Abm},
      {"sweep", "equilibrium sweep over a parameter grid", Mode::Sweep},
  };

  std::vector<std::pair<CommonArgs, Mode>> pending(5);
  for (std::size_t i = 0; i < 5; ++i) {
    CLI::App* cmd = app.add_subcommand(subs[i].name, subs[i].help);
    pending[i].second = subs[i].mode;
    add_common(cmd, pending[i].first);
    const std::size_t idx = i;
    cmd->callback([&, idx]() {
      const auto& [args, mode] = pending[idx];
      const Scenario scenario = build_scenario(args, mode);
      std::exit(finish(trustgame::run_scenario(scenario), args.json));
    });
  }

  CommonArgs repro_args;
  std::string figure;
  CLI::App* repro = app.add_subcommand("reproduce", "scripted reproduction scenarios");
  repro->add_option("figure", figure, "entrant | n-sweep | maneuver-compare")
      ->required();
  repro->add_option("-o,--out", repro_args.output_dir, "output directory");
  repro->add_flag("--json", repro_args.json, "print the JSON summary to stdout");
  repro->callback([&]() {
    const std::string out = repro_args.output_dir.empty()
                                ? "out-" + figure
                                : repro_args.output_dir;
    std::exit(finish(trustgame::reproduce(figure, out), repro_args.json));
  });

  CommonArgs run_args;
  std::string manifest;
  CLI::App* rerun = app.add_subcommand("run", "re-run a scenario from its manifest");
  rerun->add_option("--manifest", manifest, "manifest.json written by a previous run")
      ->required();
  rerun->add_option("-o,--out", run_args.output_dir, "output directory");
  rerun->add_flag("--json", run_args.json, "print the JSON summary to stdout");
  rerun->callback([&]() {
    Scenario scenario = trustgame::scenario_from_manifest(manifest);
    if (!run_args.output_dir.empty()) scenario.output_dir = run_args.output_dir;
    std::exit(finish(trustgame::run_scenario(scenario), run_args.json));
  });

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const trustgame::InfeasibleTargetError& err) {
    std::cerr << "error: " << err.what() << std::endl;
    return trustgame::kExitConfig;
  } catch (const ConfigError& err) {
    std::cerr << "error: " << err.what() << std::endl;
    return trustgame::kExitConfig;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << std::endl;
    return trustgame::kExitConfig;
  }
  return 0;
}
