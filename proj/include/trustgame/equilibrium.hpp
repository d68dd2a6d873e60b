#pragma once

#include <cstddef>
#include <vector>

#include "trustgame/core.hpp"

// Static optima and Nash equilibria: closed-form best responses, damped
// simultaneous best-response iteration, and independent brute-force
// oracles used to cross-check the closed forms.
namespace trustgame {

// A constant-strategy profile together with fixed-point diagnostics.
struct StaticProfile {
  std::vector<double> alphas;
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;  // max_i |alpha_i - BR_i(alpha_{-i})|
};

// Per-node deviation audit of a candidate equilibrium.
struct NashReport {
  bool passed = false;
  std::vector<double> max_gain;  // best improvement found per node
  double tolerance = 0.0;
  double resolution = 0.0;
};

// Single-node static optimum: alpha* = (p + 2r) / (2(p + q + r)).
Strategy single_static_optimum(const NodeParams& params);

// Best response against a fixed benign-rate sum S of the other nodes:
//   alpha* = (p + 2r(1+S)) / (2[p + q + r + (q+r)S]).
double static_best_response(const NodeParams& params, double others_sum);

// Grid argmax of the long-run average profit; independent of the closed
// forms above. Ties break toward the smaller alpha.
double brute_force_best_response(const NodeParams& params, double others_sum,
                                 double resolution);

// Damped simultaneous (Jacobi) best-response iteration from alpha_i = 0.5.
StaticProfile static_nash_fixed_point(const GameConfig& config);

// Fixed-point search from 0.5 plus 8 seeded random starts; distinct
// converged profiles (pairwise max-norm distance > 100*tol) are all
// reported, the canonical 0.5-start result first.
std::vector<StaticProfile> static_nash_multistart(const GameConfig& config);

// Check deviation-proofness of a profile on a deviation grid.
NashReport verify_nash(const StaticProfile& profile, const GameConfig& config,
                       double resolution = 1e-4, double tolerance = 1e-6);

// Two-player slope of the best response in the other player's rate:
//   d alpha_i / d alpha_j = -(4r(q+r) + p(q+3r)) / (2(p + (q+r)(1+alpha_j)^2)).
double best_response_slope(const NodeParams& params, double alpha_j);

}  // namespace trustgame
