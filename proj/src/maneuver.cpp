#include "trustgame/maneuver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "trustgame/equilibrium.hpp"
#include "trustgame/pontryagin.hpp"

namespace trustgame {

namespace {

constexpr double kBracketLo = 1e-9;
constexpr double kBracketHi = 1e3;
constexpr int kBisectIter = 200;

[[noreturn]] void throw_infeasible(double target, double lo, double hi,
                                   const char* where) {
  std::ostringstream msg;
  msg << where << ": target beta " << target
      << " is not achievable; feasible interval is (" << lo << ", " << hi << ")";
  throw InfeasibleTargetError(msg.str(), lo, hi);
}

// Equilibrium beta of node 0 in a symmetric n-node game with penalty r.
double symmetric_forward_beta(std::size_t n, double p, double q, double r) {
  std::vector<NodeParams> params(n, NodeParams{p, q, r});
  return 1.0 - steady_state_open_loop(params)[0];
}

// Monotone-decreasing bisection of beta(r) = target over r in the bracket.
double bisect_penalty(const std::function<double(double)>& beta_of_r, double target,
                      const char* where) {
  const double beta_hi = beta_of_r(kBracketLo);  // r -> 0 gives the largest beta
  const double beta_lo = beta_of_r(kBracketHi);
  if (!(target < beta_hi && target > beta_lo)) {
    throw_infeasible(target, beta_lo, beta_hi, where);
  }
  double lo = kBracketLo, hi = kBracketHi;
  for (int it = 0; it < kBisectIter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (beta_of_r(mid) > target) {
      lo = mid;  // beta too high -> raise the penalty
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ManeuverResult maneuver_single(double p, double q, double target_beta) {
  if (!(p > 0.0 && q > 0.0)) throw ConfigError("maneuver_single: p, q must be positive");
  const double beta_max = (p + 2.0 * q) / (2.0 * (p + q));  // r -> 0 limit
  if (!(target_beta > 0.0 && target_beta < beta_max)) {
    throw_infeasible(target_beta, 0.0, beta_max, "maneuver_single");
  }
  const double r = (p + 2.0 * q) / (2.0 * target_beta) - p - q;

  ManeuverResult result;
  result.r = {r};
  result.target_beta = {target_beta};
  result.achieved_beta = {single_static_optimum(NodeParams{p, q, r}).beta()};
  result.residual = std::abs(result.achieved_beta[0] - target_beta);
  return result;
}

ManeuverResult maneuver_symmetric(std::size_t n, double p, double q,
                                  double target_beta) {
  if (n < 2) throw ConfigError("maneuver_symmetric: n must be >= 2");
  if (!(p > 0.0 && q > 0.0)) {
    throw ConfigError("maneuver_symmetric: p, q must be positive");
  }
  if (!(target_beta > 0.0 && target_beta < 1.0)) {
    throw ConfigError("maneuver_symmetric: target beta must lie in (0,1)");
  }

  // Linear-in-r rearrangement of the symmetric steady-state equation with
  // alpha = 1 - beta and S = (n-1) alpha:
  //   r = [p(2a - 1) + 2aq(1 + S)] / [2(1 + S)(1 - a)].
  const double a = 1.0 - target_beta;
  const double S = static_cast<double>(n - 1) * a;
  const double r = (p * (2.0 * a - 1.0) + 2.0 * a * q * (1.0 + S)) /
                   (2.0 * (1.0 + S) * (1.0 - a));

  const auto forward = [&](double rr) { return symmetric_forward_beta(n, p, q, rr); };

  ManeuverResult result;
  result.target_beta = {target_beta};
  if (r > 0.0 && std::isfinite(r)) {
    result.r = {r};
    result.achieved_beta = {forward(r)};
    result.residual = std::abs(result.achieved_beta[0] - target_beta);
    if (result.residual < 1e-8) return result;
  }
  // Closed form infeasible or inaccurate: bisection on the forward map.
  const double rb = bisect_penalty(forward, target_beta, "maneuver_symmetric");
  result.r = {rb};
  result.achieved_beta = {forward(rb)};
  result.residual = std::abs(result.achieved_beta[0] - target_beta);
  return result;
}

double maneuver_two_symmetric_paper(double p, double q, double target_beta) {
  const double s = 3.0 - 2.0 * target_beta;
  return (p + q) * s * s - 0.25 * (3.0 * p + q);
}

ManeuverResult maneuver_general(const GameConfig& config,
                                const std::vector<double>& targets) {
  config.validate();
  if (targets.size() != config.n) {
    throw ConfigError("maneuver_general: targets length must equal n");
  }
  for (double b : targets) {
    if (!(b > 0.0 && b < 1.0)) {
      throw ConfigError("maneuver_general: each target must lie in (0,1)");
    }
  }

  GameConfig work = config;
  const auto achieved = [&](std::size_t i) {
    return 1.0 - static_nash_fixed_point(work).alphas[i];
  };

  double best_residual = std::numeric_limits<double>::infinity();
  constexpr int kMaxCycles = 60;
  constexpr double kTol = 1e-6;
  for (int cycle = 0; cycle < kMaxCycles; ++cycle) {
    for (std::size_t i = 0; i < config.n; ++i) {
      const auto beta_of_r = [&](double r) {
        work.params[i].r = r;
        return achieved(i);
      };
      std::ostringstream where;
      where << "maneuver_general (node " << i << ")";
      work.params[i].r = bisect_penalty(beta_of_r, targets[i], where.str().c_str());
    }
    double residual = 0.0;
    for (std::size_t i = 0; i < config.n; ++i) {
      residual = std::max(residual, std::abs(achieved(i) - targets[i]));
    }
    best_residual = std::min(best_residual, residual);
    if (residual < kTol) {
      ManeuverResult result;
      result.target_beta = targets;
      result.residual = residual;
      for (std::size_t i = 0; i < config.n; ++i) {
        result.r.push_back(work.params[i].r);
        result.achieved_beta.push_back(achieved(i));
      }
      return result;
    }
  }
  std::ostringstream msg;
  msg << "maneuver_general: did not reach residual " << kTol << " within "
      << kMaxCycles << " cycles; best residual " << best_residual;
  throw NumericError(msg.str());
}

}  // namespace trustgame
