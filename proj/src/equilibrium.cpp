#include "trustgame/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace trustgame {

namespace {

double others_sum_at(const std::vector<double>& alphas, std::size_t i) {
  double total = 0.0;
  for (double a : alphas) total += a;
  return total - alphas[i];
}

StaticProfile fixed_point_from(const GameConfig& config, std::vector<double> alphas) {
  StaticProfile profile;
  profile.alphas = std::move(alphas);
  std::vector<double> br(config.n);
  for (int it = 0; it < config.max_iter; ++it) {
    double residual = 0.0;
    for (std::size_t i = 0; i < config.n; ++i) {
      br[i] = static_best_response(config.params[i], others_sum_at(profile.alphas, i));
      residual = std::max(residual, std::abs(br[i] - profile.alphas[i]));
    }
    profile.iterations = it + 1;
    profile.residual = residual;
    if (residual < config.tol) {
      profile.converged = true;
      return profile;
    }
    for (std::size_t i = 0; i < config.n; ++i) {
      profile.alphas[i] = (1.0 - config.damping) * profile.alphas[i] +
                          config.damping * br[i];
    }
  }
  profile.converged = false;
  return profile;
}

}  // namespace

Strategy single_static_optimum(const NodeParams& params) {
  params.validate();
  return Strategy((params.p + 2.0 * params.r) /
                  (2.0 * (params.p + params.q + params.r)));
}

double static_best_response(const NodeParams& params, double others_sum) {
  params.validate();
  if (others_sum < 0.0) {
    throw ConfigError("static_best_response: others_sum must be >= 0");
  }
  const double num = params.p + 2.0 * params.r * (1.0 + others_sum);
  const double den = 2.0 * (params.p + params.q + params.r +
                            (params.q + params.r) * others_sum);
  return num / den;
}

double brute_force_best_response(const NodeParams& params, double others_sum,
                                 double resolution) {
  params.validate();
  if (!(resolution > 0.0 && resolution <= 0.01)) {
    throw ConfigError("brute_force_best_response: resolution must lie in (0, 0.01]");
  }
  const auto steps = static_cast<std::size_t>(std::llround(1.0 / resolution));
  double best_alpha = 0.0;
  double best_value = long_run_average_profit(Strategy(0.0), others_sum, params);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double a = std::min(1.0, static_cast<double>(k) * resolution);
    const double v = long_run_average_profit(Strategy(a), others_sum, params);
    if (v > best_value) {
      best_value = v;
      best_alpha = a;
    }
  }
  return best_alpha;
}

StaticProfile static_nash_fixed_point(const GameConfig& config) {
  config.validate();
  return fixed_point_from(config, std::vector<double>(config.n, 0.5));
}

std::vector<StaticProfile> static_nash_multistart(const GameConfig& config) {
  config.validate();
  std::vector<StaticProfile> distinct;
  distinct.push_back(static_nash_fixed_point(config));

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int start = 0; start < 8; ++start) {
    std::vector<double> init(config.n);
    for (double& a : init) a = unit(rng);
    StaticProfile candidate = fixed_point_from(config, std::move(init));
    if (!candidate.converged) continue;
    bool is_new = true;
    for (const auto& known : distinct) {
      double dist = 0.0;
      for (std::size_t i = 0; i < config.n; ++i) {
        dist = std::max(dist, std::abs(known.alphas[i] - candidate.alphas[i]));
      }
      if (dist <= 100.0 * config.tol) {
        is_new = false;
        break;
      }
    }
    if (is_new) distinct.push_back(std::move(candidate));
  }
  return distinct;
}

NashReport verify_nash(const StaticProfile& profile, const GameConfig& config,
                       double resolution, double tolerance) {
  config.validate();
  if (profile.alphas.size() != config.n) {
    throw ConfigError("verify_nash: profile size must equal n");
  }
  NashReport report;
  report.tolerance = tolerance;
  report.resolution = resolution;
  report.max_gain.resize(config.n);

  const auto steps = static_cast<std::size_t>(std::llround(1.0 / resolution));
  bool all_ok = true;
  for (std::size_t i = 0; i < config.n; ++i) {
    const double others = others_sum_at(profile.alphas, i);
    const double base =
        long_run_average_profit(Strategy(profile.alphas[i]), others, config.params[i]);
    double max_gain = 0.0;
    for (std::size_t k = 0; k <= steps; ++k) {
      const double a = std::min(1.0, static_cast<double>(k) * resolution);
      const double gain =
          long_run_average_profit(Strategy(a), others, config.params[i]) - base;
      max_gain = std::max(max_gain, gain);
    }
    report.max_gain[i] = max_gain;
    if (max_gain > tolerance) all_ok = false;
  }
  report.passed = all_ok;
  return report;
}

double best_response_slope(const NodeParams& params, double alpha_j) {
  params.validate();
  if (!(alpha_j >= 0.0 && alpha_j <= 1.0)) {
    throw ConfigError("best_response_slope: alpha_j must lie in [0,1]");
  }
  const double p = params.p, q = params.q, r = params.r;
  const double num = 4.0 * r * (q + r) + p * (q + 3.0 * r);
  const double den = 2.0 * (p + (q + r) * (1.0 + alpha_j) * (1.0 + alpha_j));
  return -num / den;
}

}  // namespace trustgame
