#include "trustgame/abm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace trustgame {

namespace {

// One-step transition thresholds out of every attention state, cumulative
// over destinations. State 0 is "unattached"; state i in 1..n is
// "attached to node i-1".
struct StepTable {
  // thresholds[s] lists cumulative probabilities; dest[s][k] is the state
  // entered when the uniform draw falls below thresholds[s][k].
  std::vector<std::vector<double>> thresholds;
  std::vector<std::vector<int>> dest;
};

StepTable build_step_table(const std::vector<double>& alpha, double dt) {
  const std::size_t n = alpha.size();
  StepTable table;
  table.thresholds.resize(n + 1);
  table.dest.resize(n + 1);

  // Unattached: may attach to any node.
  double cum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cum += alpha[i] * dt;
    table.thresholds[0].push_back(cum);
    table.dest[0].push_back(static_cast<int>(i) + 1);
  }
  // Attached to node i: may detach or be poached by node j.
  for (std::size_t i = 0; i < n; ++i) {
    cum = (1.0 - alpha[i]) * dt;  // beta_i dt
    table.thresholds[i + 1].push_back(cum);
    table.dest[i + 1].push_back(0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      cum += alpha[j] * dt;
      table.thresholds[i + 1].push_back(cum);
      table.dest[i + 1].push_back(static_cast<int>(j) + 1);
    }
  }
  return table;
}

void check_exit_bound(const std::vector<double>& alpha, double dt) {
  const std::size_t n = alpha.size();
  double worst = 0.0;
  double sum_alpha = 0.0;
  for (double a : alpha) sum_alpha += a;
  worst = std::max(worst, sum_alpha * dt);  // unattached state
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, ((1.0 - alpha[i]) + (sum_alpha - alpha[i])) * dt);
  }
  if (worst > 0.5) {
    std::ostringstream msg;
    msg << "simulate_population: dt=" << dt
        << " gives a one-step exit probability of " << worst
        << " (> 0.5); shrink dt";
    throw ConfigError(msg.str());
  }
}

}  // namespace

EmpiricalTrajectory simulate_population(const GameConfig& config, int users,
                                        const std::vector<Strategy>& strategies,
                                        double dt, int runs) {
  std::vector<PiecewiseLinear> alphas;
  alphas.reserve(strategies.size());
  for (const auto& s : strategies) alphas.emplace_back(s.alpha());
  return simulate_population(config, users, alphas, dt, runs);
}

EmpiricalTrajectory simulate_population(const GameConfig& config, int users,
                                        const std::vector<PiecewiseLinear>& alphas,
                                        double dt, int runs) {
  config.validate();
  if (alphas.size() != config.n) {
    throw ConfigError("simulate_population: one control signal per node required");
  }
  if (users < 1) throw ConfigError("simulate_population: users must be >= 1");
  if (runs < 1) throw ConfigError("simulate_population: runs must be >= 1");
  if (!(dt > 0.0)) throw ConfigError("simulate_population: dt must be positive");

  const std::size_t n = config.n;
  const auto steps = static_cast<std::size_t>(std::llround(config.horizon / dt));
  if (steps < 1) throw ConfigError("simulate_population: horizon shorter than dt");

  // Validate the probability bound at every grid sample of the controls.
  std::vector<double> a_now(n);
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    for (std::size_t i = 0; i < n; ++i) a_now[i] = alphas[i](t);
    check_exit_bound(a_now, dt);
  }

  EmpiricalTrajectory emp;
  emp.runs = runs;
  emp.times.resize(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) emp.times[k] = static_cast<double>(k) * dt;
  std::vector<std::vector<double>> sum(steps + 1, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> sumsq(steps + 1, std::vector<double>(n, 0.0));

  const double inv_users = 1.0 / static_cast<double>(users);
  std::vector<int> assignment(users);
  std::vector<long long> counts(n + 1);

  for (int rep = 0; rep < runs; ++rep) {
    std::mt19937_64 rng(config.seed + static_cast<std::uint64_t>(rep));
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // Initial assignment: deterministic rounding of x0 into blocks.
    std::fill(assignment.begin(), assignment.end(), 0);
    {
      int cursor = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const int ni = static_cast<int>(std::llround(config.x0[i] * users));
        for (int u = 0; u < ni && cursor < users; ++u, ++cursor) {
          assignment[cursor] = static_cast<int>(i) + 1;
        }
      }
    }

    const bool constant_controls =
        std::all_of(alphas.begin(), alphas.end(),
                    [](const PiecewiseLinear& a) { return a.is_constant(); });
    StepTable table;
    if (constant_controls) {
      for (std::size_t i = 0; i < n; ++i) a_now[i] = alphas[i](0.0);
      table = build_step_table(a_now, dt);
    }

    for (std::size_t k = 0; k <= steps; ++k) {
      std::fill(counts.begin(), counts.end(), 0);
      for (int u = 0; u < users; ++u) ++counts[assignment[u]];
      for (std::size_t i = 0; i < n; ++i) {
        const double share = static_cast<double>(counts[i + 1]) * inv_users;
        sum[k][i] += share;
        sumsq[k][i] += share * share;
      }
      if (k == steps) break;

      if (!constant_controls) {
        const double t = static_cast<double>(k) * dt;
        for (std::size_t i = 0; i < n; ++i) a_now[i] = alphas[i](t);
        table = build_step_table(a_now, dt);
      }
      for (int u = 0; u < users; ++u) {
        const int s = assignment[u];
        const double draw = unit(rng);
        const auto& th = table.thresholds[s];
        for (std::size_t c = 0; c < th.size(); ++c) {
          if (draw < th[c]) {
            assignment[u] = table.dest[s][c];
            break;
          }
        }
      }
    }
  }

  emp.shares.resize(steps + 1, std::vector<double>(n));
  emp.stderrs.resize(steps + 1, std::vector<double>(n));
  for (std::size_t k = 0; k <= steps; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double mean = sum[k][i] / runs;
      emp.shares[k][i] = mean;
      if (runs > 1) {
        const double var =
            std::max(0.0, (sumsq[k][i] - runs * mean * mean) / (runs - 1));
        emp.stderrs[k][i] = std::sqrt(var / runs);
      } else {
        emp.stderrs[k][i] = 0.0;
      }
    }
  }
  return emp;
}

std::vector<double> meanfield_gap(const EmpiricalTrajectory& emp,
                                  const SampledPath& ode) {
  if (emp.times.empty() || ode.times.empty()) {
    throw ConfigError("meanfield_gap: empty trajectory");
  }
  if (ode.values.front().size() != emp.shares.front().size()) {
    throw ConfigError("meanfield_gap: node-count mismatch");
  }
  const double slack = 1e-9;
  if (emp.times.front() < ode.times.front() - slack ||
      emp.times.back() > ode.times.back() + slack) {
    throw ConfigError("meanfield_gap: ODE grid does not cover the empirical grid");
  }
  const std::size_t n = emp.shares.front().size();
  std::vector<double> gap(n, 0.0);
  for (std::size_t k = 0; k < emp.times.size(); ++k) {
    const std::vector<double> ref = ode.at(emp.times[k]);
    for (std::size_t i = 0; i < n; ++i) {
      gap[i] = std::max(gap[i], std::abs(emp.shares[k][i] - ref[i]));
    }
  }
  return gap;
}

}  // namespace trustgame
