#include "trustgame/run.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "trustgame/abm.hpp"
#include "trustgame/equilibrium.hpp"
#include "trustgame/maneuver.hpp"
#include "trustgame/ode.hpp"
#include "trustgame/pontryagin.hpp"
#include "trustgame/svg.hpp"
#include "trustgame/table.hpp"

namespace trustgame {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

json manifest_json(const Scenario& scenario) {
  json m;
  m["tool_version"] = kToolVersion;
  m["scenario"] = scenario.to_keyvals();
  return m;
}

void write_manifest(const Scenario& scenario, const fs::path& dir) {
  write_text(dir / "manifest.json", manifest_json(scenario).dump(2) + "\n");
}

// Column layout for static-mode trajectories: t then per-node
// x, alpha, beta, profit.
Table static_trajectory_table(const GameConfig& config,
                              const std::vector<double>& alphas) {
  std::vector<Strategy> strategies;
  for (double a : alphas) strategies.emplace_back(a);

  const VectorField field = [&](double t, const std::vector<double>& x) {
    return drift_multi(TrustState{x, t}, strategies);
  };
  IntegratorSpec spec;
  spec.base_step = config.step;
  SampledPath path = integrate_forward(field, config.x0, 0.0, config.horizon, spec);

  Table table;
  table.columns.push_back("t");
  for (std::size_t i = 1; i <= config.n; ++i) {
    const std::string s = std::to_string(i);
    table.columns.push_back("x" + s);
    table.columns.push_back("alpha" + s);
    table.columns.push_back("beta" + s);
    table.columns.push_back("profit" + s);
  }
  for (std::size_t k = 0; k < path.times.size(); ++k) {
    std::vector<double> row{path.times[k]};
    for (std::size_t i = 0; i < config.n; ++i) {
      row.push_back(path.values[k][i]);
      row.push_back(alphas[i]);
      row.push_back(1.0 - alphas[i]);
      row.push_back(profit_density(path.values[k][i], strategies[i], config.params[i]));
    }
    table.add_row(std::move(row));
  }
  return table;
}

// Dynamic-mode layout adds the costate column per node.
Table dynamic_trajectory_table(const OpenLoopSolution& sol) {
  const std::size_t n = sol.nodes.size();
  Table table;
  table.columns.push_back("t");
  for (std::size_t i = 1; i <= n; ++i) {
    const std::string s = std::to_string(i);
    table.columns.push_back("x" + s);
    table.columns.push_back("alpha" + s);
    table.columns.push_back("beta" + s);
    table.columns.push_back("lambda" + s);
    table.columns.push_back("profit" + s);
  }
  const auto& times = sol.nodes[0].times;
  for (std::size_t k = 0; k < times.size(); ++k) {
    std::vector<double> row{times[k]};
    for (std::size_t i = 0; i < n; ++i) {
      row.push_back(sol.nodes[i].x[k]);
      row.push_back(sol.nodes[i].alpha[k]);
      row.push_back(1.0 - sol.nodes[i].alpha[k]);
      row.push_back(sol.nodes[i].lambda[k]);
      row.push_back(sol.nodes[i].profit_density[k]);
    }
    table.add_row(std::move(row));
  }
  return table;
}

std::vector<std::string> state_series(std::size_t n) {
  std::vector<std::string> series;
  for (std::size_t i = 1; i <= n; ++i) series.push_back("x" + std::to_string(i));
  return series;
}

std::string summary_text(const json& summary) {
  std::ostringstream out;
  out << "trustgame " << kToolVersion << " summary\n";
  out << summary.dump(2) << "\n";
  return out.str();
}

void emit_bundle(const Scenario& scenario, const fs::path& dir, const Table& table,
                 const json& summary, const std::vector<PlotSpec>& plots) {
  fs::create_directories(dir);
  write_manifest(scenario, dir);
  write_text(dir / "results.csv", table.to_csv());
  write_text(dir / "summary.json", summary.dump(2) + "\n");
  write_text(dir / "summary.txt", summary_text(summary));
  for (const auto& plot : plots) {
    const std::string name =
        plot.title.empty() ? std::string("plot") : plot.title;
    std::string file;
    for (char c : name) file += (std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
    write_text(dir / (file + ".svg"), emit_plot(table, plot));
  }
}

FbsOptions fbs_options(const Scenario& scenario) {
  FbsOptions opts;
  if (scenario.explicit_keys.count("tol")) opts.tol = scenario.config.tol;
  if (scenario.explicit_keys.count("max_iter")) {
    opts.max_sweeps = scenario.config.max_iter;
  }
  return opts;
}

RunResult run_static(const Scenario& scenario) {
  const GameConfig& config = scenario.config;
  const auto profiles = static_nash_multistart(config);
  const StaticProfile& main = profiles.front();

  json summary;
  summary["mode"] = "static";
  summary["converged"] = main.converged;
  summary["iterations"] = main.iterations;
  summary["residual"] = main.residual;
  summary["alpha"] = main.alphas;
  std::vector<double> betas, xeq;
  double total = 0.0;
  for (double a : main.alphas) total += a;
  for (double a : main.alphas) {
    betas.push_back(1.0 - a);
    xeq.push_back(a / (1.0 + total - a));
  }
  summary["beta"] = betas;
  summary["equilibrium_trust"] = xeq;
  summary["distinct_equilibria"] = profiles.size();

  if (main.converged) {
    const NashReport report = verify_nash(main, config);
    summary["deviation_check_passed"] = report.passed;
    summary["deviation_max_gain"] = report.max_gain;
  }

  const Table table = static_trajectory_table(config, main.alphas);
  PlotSpec plot{"t", state_series(config.n), "states"};
  emit_bundle(scenario, scenario.output_dir, table, summary, {plot});

  return RunResult{main.converged ? kExitOk : kExitNoConverge, summary};
}

RunResult run_dynamic(const Scenario& scenario) {
  const OpenLoopSolution sol = solve_open_loop(scenario.config, fbs_options(scenario));

  json summary;
  summary["mode"] = "dynamic";
  summary["converged"] = sol.converged;
  summary["sweeps"] = sol.sweeps;
  summary["control_residual"] = sol.control_residual;
  std::vector<double> plat_a, plat_b, plat_x;
  for (std::size_t i = 0; i < sol.nodes.size(); ++i) {
    plat_a.push_back(sol.plateau_control(i));
    plat_b.push_back(1.0 - sol.plateau_control(i));
    plat_x.push_back(sol.plateau_state(i));
  }
  summary["plateau_alpha"] = plat_a;
  summary["plateau_beta"] = plat_b;
  summary["plateau_trust"] = plat_x;
  summary["steady_state_prediction"] = steady_state_open_loop(scenario.config.params);

  const Table table = dynamic_trajectory_table(sol);
  std::vector<std::string> controls;
  for (std::size_t i = 1; i <= scenario.config.n; ++i) {
    controls.push_back("alpha" + std::to_string(i));
  }
  emit_bundle(scenario, scenario.output_dir, table, summary,
              {PlotSpec{"t", state_series(scenario.config.n), "states"},
               PlotSpec{"t", controls, "controls"}});

  return RunResult{sol.converged ? kExitOk : kExitNoConverge, summary};
}

RunResult run_maneuver(const Scenario& scenario) {
  const GameConfig& config = scenario.config;
  std::vector<double> targets = scenario.target_beta;
  if (targets.size() == 1 && config.n > 1) targets.assign(config.n, targets[0]);
  if (targets.size() != config.n) {
    throw ConfigError("maneuver: target_beta must have 1 or n entries");
  }

  const bool symmetric_pq =
      std::all_of(config.params.begin(), config.params.end(),
                  [&](const NodeParams& pr) {
                    return pr.p == config.params[0].p && pr.q == config.params[0].q;
                  });
  const bool uniform_target =
      std::all_of(targets.begin(), targets.end(),
                  [&](double b) { return b == targets[0]; });

  json summary;
  summary["mode"] = "maneuver";
  ManeuverResult result;
  try {
    if (config.n == 1) {
      result = maneuver_single(config.params[0].p, config.params[0].q, targets[0]);
      summary["method"] = "single-closed-form";
    } else if (symmetric_pq && uniform_target) {
      result = maneuver_symmetric(config.n, config.params[0].p, config.params[0].q,
                                  targets[0]);
      summary["method"] = "symmetric-inversion";
    } else {
      result = maneuver_general(config, targets);
      summary["method"] = "general-bisection";
    }
  } catch (const InfeasibleTargetError& err) {
    summary["error"] = err.what();
    summary["feasible_beta_lo"] = err.feasible_lo;
    summary["feasible_beta_hi"] = err.feasible_hi;
    Table table;
    table.columns = {"node", "target_beta"};
    for (std::size_t i = 0; i < targets.size(); ++i) {
      table.add_row({static_cast<double>(i + 1), targets[i]});
    }
    emit_bundle(scenario, scenario.output_dir, table, summary, {});
    return RunResult{kExitConfig, summary};
  }

  summary["r"] = result.r;
  summary["target_beta"] = result.target_beta;
  summary["achieved_beta"] = result.achieved_beta;
  summary["residual"] = result.residual;

  // Literal two-node closed form kept for comparison; it disagrees with
  // the round-trip-verified inversion and is never used to set r.
  if (config.n == 2 && symmetric_pq && uniform_target) {
    const double literal = maneuver_two_symmetric_paper(
        config.params[0].p, config.params[0].q, targets[0]);
    summary["literal_two_node_formula_r"] = literal;
    summary["literal_formula_note"] =
        "the literal two-node closed form disagrees with the round-trip "
        "inverter and is reported for comparison only";
  }

  Table table;
  table.columns = {"node", "r", "target_beta", "achieved_beta"};
  for (std::size_t i = 0; i < result.r.size(); ++i) {
    table.add_row({static_cast<double>(i + 1), result.r[i], result.target_beta[i],
                   result.achieved_beta[i]});
  }
  emit_bundle(scenario, scenario.output_dir, table, summary, {});
  return RunResult{kExitOk, summary};
}

RunResult run_abm(const Scenario& scenario) {
  const GameConfig& config = scenario.config;
  std::vector<double> alphas = scenario.alpha_list;
  if (alphas.empty()) alphas = static_nash_fixed_point(config).alphas;
  std::vector<Strategy> strategies;
  for (double a : alphas) strategies.emplace_back(a);

  EmpiricalTrajectory emp;
  try {
    emp = simulate_population(config, scenario.abm.users, strategies,
                              scenario.abm.dt, scenario.abm.runs);
  } catch (const ConfigError& err) {
    json summary;
    summary["mode"] = "abm";
    summary["error"] = err.what();
    Table table;
    table.columns = {"t"};
    emit_bundle(scenario, scenario.output_dir, table, summary, {});
    return RunResult{kExitConfig, summary};
  }

  const VectorField field = [&](double t, const std::vector<double>& x) {
    return drift_multi(TrustState{x, t}, strategies);
  };
  IntegratorSpec spec;
  spec.base_step = scenario.abm.dt;
  SampledPath ode = integrate_forward(field, config.x0, 0.0, config.horizon, spec);
  const std::vector<double> gaps = meanfield_gap(emp, ode);

  Table table;
  table.columns.push_back("t");
  for (std::size_t i = 1; i <= config.n; ++i) {
    const std::string s = std::to_string(i);
    table.columns.push_back("emp_x" + s);
    table.columns.push_back("stderr" + s);
    table.columns.push_back("ode_x" + s);
  }
  for (std::size_t k = 0; k < emp.times.size(); ++k) {
    std::vector<double> row{emp.times[k]};
    const std::vector<double> ref = ode.at(emp.times[k]);
    for (std::size_t i = 0; i < config.n; ++i) {
      row.push_back(emp.shares[k][i]);
      row.push_back(emp.stderrs[k][i]);
      row.push_back(ref[i]);
    }
    table.add_row(std::move(row));
  }

  json summary;
  summary["mode"] = "abm";
  summary["users"] = scenario.abm.users;
  summary["runs"] = scenario.abm.runs;
  summary["dt"] = scenario.abm.dt;
  summary["alpha"] = alphas;
  summary["supnorm_gap"] = gaps;

  std::vector<std::string> series;
  for (std::size_t i = 1; i <= config.n; ++i) {
    series.push_back("emp_x" + std::to_string(i));
    series.push_back("ode_x" + std::to_string(i));
  }
  emit_bundle(scenario, scenario.output_dir, table, summary,
              {PlotSpec{"t", series, "meanfield"}});
  return RunResult{kExitOk, summary};
}

RunResult run_sweep(const Scenario& scenario) {
  const GameConfig& base = scenario.config;
  Table table;
  table.columns.push_back(scenario.sweep.param);
  for (std::size_t i = 1; i <= base.n; ++i) {
    table.columns.push_back("alpha" + std::to_string(i));
    table.columns.push_back("beta" + std::to_string(i));
  }

  json rows = json::array();
  for (double value : scenario.sweep.grid) {
    std::vector<double> alphas;
    if (scenario.sweep.param == "n") {
      if (value < 1 || value != std::floor(value)) {
        throw ConfigError("sweep over n requires positive integers");
      }
      const auto n = static_cast<std::size_t>(value);
      alphas = steady_state_open_loop(std::vector<NodeParams>(n, base.params[0]));
      // Report the shared symmetric value in every column.
      alphas.resize(base.n, alphas[0]);
    } else {
      GameConfig config = base;
      for (auto& pr : config.params) {
        if (scenario.sweep.param == "p") pr.p = value;
        if (scenario.sweep.param == "q") pr.q = value;
        if (scenario.sweep.param == "r") pr.r = value;
      }
      const StaticProfile profile = static_nash_fixed_point(config);
      if (!profile.converged) {
        throw NumericError("sweep: fixed point failed to converge at value " +
                           std::to_string(value));
      }
      alphas = profile.alphas;
    }
    std::vector<double> row{value};
    for (std::size_t i = 0; i < base.n; ++i) {
      row.push_back(alphas[i]);
      row.push_back(1.0 - alphas[i]);
    }
    table.add_row(row);
    rows.push_back({{"value", value}, {"alpha", alphas}});
  }

  json summary;
  summary["mode"] = "sweep";
  summary["param"] = scenario.sweep.param;
  summary["points"] = rows;
  emit_bundle(scenario, scenario.output_dir, table, summary,
              {PlotSpec{scenario.sweep.param, {"alpha1", "beta1"}, "sweep"}});
  return RunResult{kExitOk, summary};
}

Scenario preset_entrant(const std::string& output_dir) {
  Scenario s;
  s.mode = Mode::Dynamic;
  s.config.n = 2;
  s.p_list = {0.4};
  s.q_list = {0.2};
  s.r_list = {0.2};
  s.config.x0 = {0.5, 0.0};
  s.config.horizon = 30.0;
  s.config.step = 0.01;
  s.output_dir = output_dir;
  s.figure = "entrant";
  s.finalize();
  return s;
}

Scenario preset_maneuver_compare(const std::string& output_dir) {
  Scenario s;
  s.mode = Mode::Dynamic;
  s.config.n = 2;
  s.p_list = {0.5};
  s.q_list = {0.1};
  s.r_list = {0.2, 0.3};
  s.config.x0 = {0.0, 0.0};
  s.config.horizon = 30.0;
  s.config.step = 0.01;
  s.output_dir = output_dir;
  s.figure = "maneuver-compare";
  s.finalize();
  return s;
}

RunResult reproduce_entrant(const std::string& output_dir) {
  Scenario s = preset_entrant(output_dir);
  RunResult result = run_dynamic(s);
  const double x1 = result.summary["plateau_trust"][0].get<double>();
  const double x2 = result.summary["plateau_trust"][1].get<double>();
  result.summary["figure"] = "entrant";
  result.summary["final_state_gap"] = std::abs(x1 - x2);
  result.summary["common_state"] = 0.5 * (x1 + x2);
  result.summary["predicted_common_state"] = 1.0 / 3.0;
  write_text(fs::path(output_dir) / "summary.json", result.summary.dump(2) + "\n");
  write_text(fs::path(output_dir) / "summary.txt", summary_text(result.summary));
  return result;
}

RunResult reproduce_nsweep(const std::string& output_dir) {
  Scenario s;
  s.mode = Mode::Sweep;
  s.p_list = {0.4};
  s.q_list = {0.2};
  s.r_list = {0.2};
  s.sweep.param = "n";
  for (int n = 1; n <= 10; ++n) s.sweep.grid.push_back(n);
  s.output_dir = output_dir;
  s.figure = "n-sweep";
  s.finalize();

  RunResult result = run_sweep(s);
  result.summary["figure"] = "n-sweep";
  bool all_half = true;
  for (const auto& point : result.summary["points"]) {
    if (std::abs(point["alpha"][0].get<double>() - 0.5) > 1e-12) all_half = false;
  }
  result.summary["alpha_constant_half"] = all_half;
  result.summary["note"] =
      "for q = r the closed-form steady state stays at alpha = 0.5 for every n; "
      "the reference figure this sweep mirrors shows alpha drifting to 0.35, "
      "which is inconsistent with that closed form and is not targeted here";
  write_text(fs::path(output_dir) / "summary.json", result.summary.dump(2) + "\n");
  write_text(fs::path(output_dir) / "summary.txt", summary_text(result.summary));
  return result;
}

RunResult reproduce_maneuver_compare(const std::string& output_dir) {
  Scenario s = preset_maneuver_compare(output_dir);
  RunResult result = run_dynamic(s);
  result.summary["figure"] = "maneuver-compare";

  const StaticProfile static_profile = static_nash_fixed_point(s.config);
  result.summary["static_beta"] =
      std::vector<double>{1.0 - static_profile.alphas[0], 1.0 - static_profile.alphas[1]};
  const double b1 = result.summary["plateau_beta"][0].get<double>();
  const double b2 = result.summary["plateau_beta"][1].get<double>();
  result.summary["higher_penalty_node_less_malicious"] = b2 < b1;
  write_text(fs::path(output_dir) / "summary.json", result.summary.dump(2) + "\n");
  write_text(fs::path(output_dir) / "summary.txt", summary_text(result.summary));
  return result;
}

}  // namespace

RunResult run_scenario(const Scenario& scenario) {
  switch (scenario.mode) {
    case Mode::Static: return run_static(scenario);
    case Mode::Dynamic: return run_dynamic(scenario);
    case Mode::Abm: return run_abm(scenario);
    case Mode::Maneuver: return run_maneuver(scenario);
    case Mode::Sweep: return run_sweep(scenario);
    case Mode::Reproduce: return reproduce(scenario.figure, scenario.output_dir);
  }
  throw ConfigError("run_scenario: bad mode");
}

RunResult reproduce(const std::string& figure, const std::string& output_dir) {
  if (figure == "entrant") return reproduce_entrant(output_dir);
  if (figure == "n-sweep") return reproduce_nsweep(output_dir);
  if (figure == "maneuver-compare") return reproduce_maneuver_compare(output_dir);
  throw ConfigError("unknown figure '" + figure +
                    "' (expected entrant|n-sweep|maneuver-compare)");
}

Scenario scenario_from_manifest(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw ConfigError("cannot open manifest: " + manifest_path.string());
  json m = json::parse(in, nullptr, true, true);
  if (!m.contains("scenario")) {
    throw ConfigError("manifest has no 'scenario' section: " + manifest_path.string());
  }
  Scenario scenario;
  for (const auto& [key, value] : m["scenario"].items()) {
    scenario.set(key, value.get<std::string>());
  }
  scenario.finalize();
  return scenario;
}

}  // namespace trustgame
