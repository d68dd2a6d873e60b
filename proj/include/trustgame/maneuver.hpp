#pragma once

#include <vector>

#include "trustgame/core.hpp"

// System-maneuver computation: invert the equilibrium map beta*(r) to
// find the penalty r that pins malicious activity to a target level.
// Every returned penalty is round-trip checked through the forward
// equilibrium solver.
namespace trustgame {

struct ManeuverResult {
  std::vector<double> r;
  std::vector<double> achieved_beta;
  std::vector<double> target_beta;
  double residual = 0.0;  // max_i |achieved_i - target_i|
};

// Closed-form single-node maneuver: r* = (p + 2q)/(2 beta) - p - q.
// Feasible targets lie in (0, (p+2q)/(2(p+q))).
ManeuverResult maneuver_single(double p, double q, double target_beta);

// Invert the symmetric n-node steady-state quadratic for r via its
// linear-in-r rearrangement, falling back to bisection on the forward
// solver when needed.
ManeuverResult maneuver_symmetric(std::size_t n, double p, double q,
                                  double target_beta);

// Quoted closed form for two symmetric nodes, kept verbatim:
//   r*(t) = (p + q)(3 - 2 beta)^2 - (1/4)(3p + q).
// Kept only for comparison; it disagrees with the round-trip inverter
// (see maneuver_general / maneuver_symmetric for the default path).
double maneuver_two_symmetric_paper(double p, double q, double target_beta);

// Asymmetric per-node targets: cyclic per-node bisection against the
// static Nash solver until the max residual drops below 1e-6.
ManeuverResult maneuver_general(const GameConfig& config,
                                const std::vector<double>& targets);

}  // namespace trustgame
