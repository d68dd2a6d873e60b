#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "trustgame/errors.hpp"

// Domain types and the trust-dynamics primitives: drift fields, the
// per-node profit integrand, and the closed-form constant-control
// solution of the trust ODE. Everything here is a pure function over
// immutable value types.
namespace trustgame {

// Per-node economic constants: unit malicious profit p, unit cost of
// positive activity q, unit penalty of negative activity r.
struct NodeParams {
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;

  void validate() const {
    if (!(p > 0.0) || !(q > 0.0) || !(r > 0.0)) {
      throw ConfigError("NodeParams: p, q, r must all be positive");
    }
  }

  friend bool operator==(const NodeParams&, const NodeParams&) = default;
};

// Control pair (alpha, beta) with alpha + beta = 1. beta is always
// derived, never stored.
class Strategy {
 public:
  explicit Strategy(double alpha) : alpha_(alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
      throw ConfigError("Strategy: alpha must lie in [0,1]");
    }
  }

  double alpha() const { return alpha_; }
  double beta() const { return 1.0 - alpha_; }

 private:
  double alpha_;
};

// Vector of trust shares x_i in [0,1] with sum <= 1 (+ roundoff slack).
struct TrustState {
  std::vector<double> x;
  double t = 0.0;

  static constexpr double kShareSlack = 1e-9;

  void validate() const {
    double total = 0.0;
    for (double xi : x) {
      if (!(xi >= 0.0 && xi <= 1.0)) {
        throw ConfigError("TrustState: each share must lie in [0,1]");
      }
      total += xi;
    }
    if (total > 1.0 + kShareSlack) {
      throw ConfigError("TrustState: shares must sum to at most 1");
    }
  }
};

// One node's sampled solution. lambda is populated only by the dynamic
// (Pontryagin) solvers and is empty otherwise.
struct NodeTrajectory {
  std::vector<double> times;
  std::vector<double> x;
  std::vector<double> alpha;
  std::vector<double> lambda;
  std::vector<double> profit_density;
};

// Shared solver configuration. seed is consumed only by the agent-based
// simulator and the multi-start equilibrium search.
struct GameConfig {
  std::size_t n = 1;
  std::vector<NodeParams> params;
  std::vector<double> x0;
  double horizon = 30.0;
  double step = 0.01;
  double tol = 1e-10;
  int max_iter = 10000;
  double damping = 0.5;
  std::uint64_t seed = 0;

  void validate() const {
    if (n < 1) throw ConfigError("GameConfig: n must be >= 1");
    if (params.size() != n) {
      throw ConfigError("GameConfig: params length must equal n");
    }
    for (const auto& pr : params) pr.validate();
    if (x0.size() != n) {
      throw ConfigError("GameConfig: x0 length must equal n");
    }
    TrustState{x0, 0.0}.validate();
    if (!(horizon > 0.0)) throw ConfigError("GameConfig: horizon must be positive");
    if (!(step > 0.0)) throw ConfigError("GameConfig: step must be positive");
    if (!(tol > 0.0)) throw ConfigError("GameConfig: tol must be positive");
    if (max_iter < 1) throw ConfigError("GameConfig: max_iter must be >= 1");
    if (!(damping > 0.0 && damping <= 1.0)) {
      throw ConfigError("GameConfig: damping must lie in (0,1]");
    }
  }
};

// dx/dt for a single node: alpha(1-x) - beta*x.
inline double drift_single(double x, const Strategy& s) {
  return s.alpha() * (1.0 - x) - s.beta() * x;
}

// dx_i/dt for n competing nodes:
//   alpha_i(1-x_i) - sum_{j!=i} alpha_j x_i - beta_i x_i.
inline std::vector<double> drift_multi(const TrustState& state,
                                       const std::vector<Strategy>& strategies) {
  if (state.x.size() != strategies.size()) {
    throw ConfigError("drift_multi: state and strategy lengths differ");
  }
  double alpha_total = 0.0;
  for (const auto& s : strategies) alpha_total += s.alpha();

  std::vector<double> dx(state.x.size());
  for (std::size_t i = 0; i < state.x.size(); ++i) {
    const double others = alpha_total - strategies[i].alpha();
    dx[i] = strategies[i].alpha() * (1.0 - state.x[i]) -
            others * state.x[i] - strategies[i].beta() * state.x[i];
  }
  return dx;
}

// Instantaneous net profit rate: p*beta*x - q*alpha^2 - r*beta^2.
inline double profit_density(double x, const Strategy& s, const NodeParams& params) {
  return params.p * s.beta() * x - params.q * s.alpha() * s.alpha() -
         params.r * s.beta() * s.beta();
}

// Trust share under constant controls:
//   x(t) = e^{-(1+S)t} x0 + alpha/(1+S) (1 - e^{-(1+S)t}),
// where S is the sum of the other nodes' benign rates.
inline double closed_form_trust(double t, double x0, double alpha_i, double others_sum) {
  const double k = 1.0 + others_sum;
  const double decay = std::exp(-k * t);
  return decay * x0 + alpha_i / k * (1.0 - decay);
}

// Time-averaged net profit under constant controls (independent of x0):
//   p(1-a)a/(1+S) - r(1-a)^2 - q a^2.
inline double long_run_average_profit(const Strategy& s, double others_sum,
                                      const NodeParams& params) {
  const double a = s.alpha();
  const double b = s.beta();
  return params.p * b * a / (1.0 + others_sum) - params.r * b * b -
         params.q * a * a;
}

}  // namespace trustgame
