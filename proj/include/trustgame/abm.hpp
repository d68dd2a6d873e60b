#pragma once

#include <cstdint>
#include <vector>

#include "trustgame/core.hpp"
#include "trustgame/ode.hpp"

// Agent-based Monte Carlo simulation of the N-user attention model whose
// mean-field limit is the trust ODE. Each user attends at most one node
// at a time; per step of length dt a user transitions
//   unattached -> node i    w.p. alpha_i dt
//   attached i -> unattached w.p. beta_i dt
//   attached i -> node j     w.p. alpha_j dt   (j != i)
namespace trustgame {

// Averaged empirical shares across replicates, with per-sample standard
// errors of the replicate mean.
struct EmpiricalTrajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> shares;  // shares[k][i]
  std::vector<std::vector<double>> stderrs; // stderrs[k][i]
  int runs = 0;
};

// Simulate `runs` independent replicates of `users` agents over
// config.horizon. Replicate j uses seed config.seed + j; identical
// configuration gives identical output. Throws ConfigError when dt is
// large enough that some state's one-step exit probability exceeds 0.5.
EmpiricalTrajectory simulate_population(const GameConfig& config, int users,
                                        const std::vector<Strategy>& strategies,
                                        double dt, int runs);

// Time-varying controls, sampled as piecewise-linear signals.
EmpiricalTrajectory simulate_population(const GameConfig& config, int users,
                                        const std::vector<PiecewiseLinear>& alphas,
                                        double dt, int runs);

// Per-node sup-norm deviation between empirical shares and an ODE
// trajectory (resampled onto the empirical grid).
std::vector<double> meanfield_gap(const EmpiricalTrajectory& emp,
                                  const SampledPath& ode);

}  // namespace trustgame
