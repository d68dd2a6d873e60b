#pragma once

#include <cstddef>
#include <vector>

#include "trustgame/core.hpp"

// Dynamic open-loop solutions: Hamiltonians, costate dynamics, the
// costate-to-control map, a forward-backward sweep solver for open-loop
// Nash trajectories, and the closed-form steady states.
namespace trustgame {

// Converged (or best-effort) open-loop profile. All node trajectories
// share one time grid; costates are populated.
struct OpenLoopSolution {
  std::vector<NodeTrajectory> nodes;
  bool converged = false;
  int sweeps = 0;
  double control_residual = 0.0;
  std::vector<double> residual_history;

  // Mean control / state over t in [0.4T, 0.6T], where the solution sits
  // on its steady plateau away from both boundary layers.
  double plateau_control(std::size_t node) const;
  double plateau_state(std::size_t node) const;
};

struct FbsOptions {
  double tol = 1e-8;    // sweep-to-sweep control residual
  int max_sweeps = 500;
};

// Maximizing control given the costate: on the interior
//   alpha = (lambda - p x + 2r) / (2(q + r)),
// zero when lambda <= p x - 2r, clamped to [0,1].
double control_from_costate(double lambda, double x, const NodeParams& params);

// Single-node adjoint: lambda_dot = lambda - p(1 - alpha).
double costate_drift_single(double lambda, double alpha, const NodeParams& params);

// n-node adjoint with others' benign-rate sum S:
//   lambda_dot = lambda (1 + S) - p (1 - alpha_i).
double costate_drift_multi(double lambda_i, double alpha_i, double others_sum,
                           const NodeParams& params);

// H_i = lambda_i * xdot_i + profit_density_i.
double hamiltonian(std::size_t node, const TrustState& state,
                   const std::vector<Strategy>& strategies, double lambda_i,
                   const NodeParams& params);

// Forward-backward sweep with terminal costates lambda_i(T) = 0 and damped
// control updates. Non-convergence is reported, not thrown.
OpenLoopSolution solve_open_loop(const GameConfig& config, const FbsOptions& opts = {});

// Steady-state open-loop controls: simultaneous solution of the n
// best-response equations. Symmetric parameters reduce to the scalar
// quadratic 2(q+r)(n-1)a^2 + 2[p+q+r-r(n-1)]a - (p+2r) = 0.
std::vector<double> steady_state_open_loop(const std::vector<NodeParams>& params);

}  // namespace trustgame
