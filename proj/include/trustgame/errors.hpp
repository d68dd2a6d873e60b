#pragma once

#include <stdexcept>
#include <string>

namespace trustgame {

// Invalid user-supplied configuration (bad parameter ranges, length
// mismatches, malformed scenario files).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical integration could not proceed (adaptive step underflow).
struct IntegrationError : std::runtime_error {
  explicit IntegrationError(const std::string& what) : std::runtime_error(what) {}
};

// A numeric routine hit a state that positive parameters should rule out.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// A maneuver target lies outside the achievable range; carries the
// feasible interval so callers can report it.
struct InfeasibleTargetError : std::runtime_error {
  InfeasibleTargetError(const std::string& what, double lo, double hi)
      : std::runtime_error(what), feasible_lo(lo), feasible_hi(hi) {}
  double feasible_lo;
  double feasible_hi;
};

}  // namespace trustgame
