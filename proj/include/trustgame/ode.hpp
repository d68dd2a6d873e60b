#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "trustgame/errors.hpp"

// Deterministic numerical integration over a finite horizon, forward or
// backward in time. Output is sampled on a uniform grid; between grid
// nodes the adaptive method takes as many internal substeps as needed.
namespace trustgame {

using VectorField =
    std::function<std::vector<double>(double t, const std::vector<double>& x)>;

enum class OdeMethod { Rk4Fixed, Rk45Adaptive };

struct IntegratorSpec {
  OdeMethod method = OdeMethod::Rk45Adaptive;
  double base_step = 1e-3;  // output grid spacing; also the fixed RK4 step
  double abs_tol = 1e-8;
  double rel_tol = 1e-8;
  bool clamp = true;  // project each component into [0,1] after every step

  void validate() const {
    if (!(base_step > 0.0)) throw ConfigError("IntegratorSpec: base_step must be positive");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
      throw ConfigError("IntegratorSpec: tolerances must be positive");
    }
  }
};

// A vector signal sampled on a time grid. values[k] is the state at times[k].
struct SampledPath {
  std::vector<double> times;
  std::vector<std::vector<double>> values;

  // Linear interpolation; clamps t to the covered range.
  std::vector<double> at(double t) const;
};

// Piecewise-linear scalar signal; used for control interpolation between
// grid samples. Constant signals avoid the grid entirely.
class PiecewiseLinear {
 public:
  explicit PiecewiseLinear(double constant) : constant_(constant), is_constant_(true) {}
  PiecewiseLinear(std::vector<double> times, std::vector<double> values);

  double operator()(double t) const;
  bool is_constant() const { return is_constant_; }

 private:
  std::vector<double> times_;
  std::vector<double> values_;
  double constant_ = 0.0;
  double dt_ = 0.0;
  bool uniform_ = false;
  bool is_constant_ = false;
};

// Integrate dx/dt = f(t, x) from t0 to t1 (t1 > t0), sampling on a uniform
// grid of spacing <= spec.base_step. Throws IntegrationError if the
// adaptive step underflows below 1e-12.
SampledPath integrate_forward(const VectorField& f, const std::vector<double>& x0,
                              double t0, double t1, const IntegratorSpec& spec);

// Integrate backward from the terminal condition x(t1) = xT down to t0
// (t1 > t0). The returned grid is still increasing in time; the terminal
// sample equals xT exactly.
SampledPath integrate_backward(const VectorField& f, const std::vector<double>& xT,
                               double t1, double t0, const IntegratorSpec& spec);

}  // namespace trustgame
