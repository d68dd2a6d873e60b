#include "trustgame/pontryagin.hpp"

#include <algorithm>
#include <cmath>

#include "trustgame/equilibrium.hpp"
#include "trustgame/ode.hpp"

namespace trustgame {

namespace {

double plateau_mean(const std::vector<double>& times, const std::vector<double>& ys) {
  const double T = times.back();
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] >= 0.4 * T && times[k] <= 0.6 * T) {
      sum += ys[k];
      ++count;
    }
  }
  return sum / static_cast<double>(count);
}

}  // namespace

double OpenLoopSolution::plateau_control(std::size_t node) const {
  return plateau_mean(nodes[node].times, nodes[node].alpha);
}

double OpenLoopSolution::plateau_state(std::size_t node) const {
  return plateau_mean(nodes[node].times, nodes[node].x);
}

double control_from_costate(double lambda, double x, const NodeParams& params) {
  if (lambda <= params.p * x - 2.0 * params.r) return 0.0;
  const double a = (lambda - params.p * x + 2.0 * params.r) /
                   (2.0 * (params.q + params.r));
  return std::clamp(a, 0.0, 1.0);
}

double costate_drift_single(double lambda, double alpha, const NodeParams& params) {
  return lambda - params.p * (1.0 - alpha);
}

double costate_drift_multi(double lambda_i, double alpha_i, double others_sum,
                           const NodeParams& params) {
  return lambda_i * (1.0 + others_sum) - params.p * (1.0 - alpha_i);
}

double hamiltonian(std::size_t node, const TrustState& state,
                   const std::vector<Strategy>& strategies, double lambda_i,
                   const NodeParams& params) {
  const std::vector<double> dx = drift_multi(state, strategies);
  return lambda_i * dx[node] +
         profit_density(state.x[node], strategies[node], params);
}

OpenLoopSolution solve_open_loop(const GameConfig& config, const FbsOptions& opts) {
  config.validate();
  const std::size_t n = config.n;
  const double T = config.horizon;

  IntegratorSpec state_spec{OdeMethod::Rk4Fixed, config.step, 1e-8, 1e-8, true};
  IntegratorSpec costate_spec{OdeMethod::Rk4Fixed, config.step, 1e-8, 1e-8, false};

  // Shared uniform grid; controls live on it and are interpolated linearly
  // inside the RK stages.
  std::vector<double> grid;
  {
    SampledPath probe = integrate_forward(
        [](double, const std::vector<double>& x) {
          return std::vector<double>(x.size(), 0.0);
        },
        config.x0, 0.0, T, state_spec);
    grid = probe.times;
  }
  const std::size_t m = grid.size();

  std::vector<std::vector<double>> alpha(n);
  for (std::size_t i = 0; i < n; ++i) {
    alpha[i].assign(m, single_static_optimum(config.params[i]).alpha());
  }

  OpenLoopSolution sol;
  SampledPath states;
  std::vector<std::vector<double>> lambdas(n);

  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    std::vector<PiecewiseLinear> controls;
    controls.reserve(n);
    for (std::size_t i = 0; i < n; ++i) controls.emplace_back(grid, alpha[i]);

    // Forward state pass under the current controls.
    const VectorField state_field = [&](double t, const std::vector<double>& x) {
      std::vector<Strategy> strategies;
      strategies.reserve(n);
      for (std::size_t i = 0; i < n; ++i) strategies.emplace_back(std::clamp(controls[i](t), 0.0, 1.0));
      return drift_multi(TrustState{x, t}, strategies);
    };
    states = integrate_forward(state_field, config.x0, 0.0, T, state_spec);

    // Backward costate pass per node, states and controls frozen.
    for (std::size_t i = 0; i < n; ++i) {
      const VectorField costate_field = [&, i](double t, const std::vector<double>& lam) {
        double others = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          if (j != i) others += std::clamp(controls[j](t), 0.0, 1.0);
        }
        const double a_i = std::clamp(controls[i](t), 0.0, 1.0);
        return std::vector<double>{
            costate_drift_multi(lam[0], a_i, others, config.params[i])};
      };
      SampledPath lam = integrate_backward(costate_field, {0.0}, T, 0.0, costate_spec);
      lambdas[i].resize(m);
      for (std::size_t k = 0; k < m; ++k) lambdas[i][k] = lam.values[k][0];
    }

    // Control update from the maximum condition, damped.
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < m; ++k) {
        const double target =
            control_from_costate(lambdas[i][k], states.values[k][i], config.params[i]);
        residual = std::max(residual, std::abs(target - alpha[i][k]));
        alpha[i][k] = (1.0 - config.damping) * alpha[i][k] + config.damping * target;
      }
    }
    sol.sweeps = sweep + 1;
    sol.control_residual = residual;
    sol.residual_history.push_back(residual);
    if (residual < opts.tol) {
      sol.converged = true;
      break;
    }
  }

  sol.nodes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    NodeTrajectory& traj = sol.nodes[i];
    traj.times = grid;
    traj.x.resize(m);
    traj.alpha = alpha[i];
    traj.lambda = lambdas[i];
    traj.profit_density.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      traj.x[k] = states.values[k][i];
      traj.profit_density[k] =
          profit_density(traj.x[k], Strategy(traj.alpha[k]), config.params[i]);
    }
  }
  return sol;
}

std::vector<double> steady_state_open_loop(const std::vector<NodeParams>& params) {
  if (params.empty()) throw ConfigError("steady_state_open_loop: empty params");
  for (const auto& pr : params) pr.validate();
  const std::size_t n = params.size();

  if (n == 1) {
    return {single_static_optimum(params[0]).alpha()};
  }

  const bool symmetric =
      std::all_of(params.begin(), params.end(),
                  [&](const NodeParams& pr) { return pr == params[0]; });
  if (symmetric) {
    const double p = params[0].p, q = params[0].q, r = params[0].r;
    const double k = static_cast<double>(n - 1);
    const double a = 2.0 * (q + r) * k;
    const double b = 2.0 * (p + q + r - r * k);
    const double c = -(p + 2.0 * r);
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
      throw NumericError("steady_state_open_loop: symmetric quadratic has no real root");
    }
    const double root = (-b + std::sqrt(disc)) / (2.0 * a);
    if (!(root >= 0.0 && root <= 1.0)) {
      throw NumericError("steady_state_open_loop: symmetric root lies outside [0,1]");
    }
    return std::vector<double>(n, root);
  }

  // Asymmetric: damped fixed point of the n simultaneous equations.
  std::vector<double> alphas(n, 0.5);
  constexpr double kTol = 1e-13;
  constexpr int kMaxIter = 200000;
  constexpr double kDamping = 0.5;
  for (int it = 0; it < kMaxIter; ++it) {
    double total = 0.0;
    for (double a : alphas) total += a;
    double residual = 0.0;
    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double S = total - alphas[i];
      const double num = params[i].p + 2.0 * params[i].r * (1.0 + S);
      const double den = 2.0 * (params[i].p + params[i].q + params[i].r +
                                (params[i].q + params[i].r) * S);
      next[i] = num / den;
      residual = std::max(residual, std::abs(next[i] - alphas[i]));
    }
    for (std::size_t i = 0; i < n; ++i) {
      alphas[i] = (1.0 - kDamping) * alphas[i] + kDamping * next[i];
    }
    if (residual < kTol) return alphas;
  }
  throw NumericError("steady_state_open_loop: fixed point did not converge");
}

}  // namespace trustgame
