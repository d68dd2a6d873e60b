#include "trustgame/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace trustgame {

namespace {

constexpr double kMinStep = 1e-12;

void clamp_unit_box(std::vector<double>& x) {
  for (double& xi : x) xi = std::clamp(xi, 0.0, 1.0);
}

std::vector<double> rk4_step(const VectorField& f, double t,
                             const std::vector<double>& x, double h) {
  const std::size_t n = x.size();
  std::vector<double> k1 = f(t, x);
  std::vector<double> tmp(n);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
  std::vector<double> k2 = f(t + 0.5 * h, tmp);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
  std::vector<double> k3 = f(t + 0.5 * h, tmp);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
  std::vector<double> k4 = f(t + h, tmp);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

// Cash-Karp embedded RK45 pair; returns the 5th-order solution and the
// max scaled error estimate.
struct Rk45Result {
  std::vector<double> x;
  double err_ratio;  // <= 1 means acceptable
};

Rk45Result rk45_step(const VectorField& f, double t, const std::vector<double>& x,
                     double h, double abs_tol, double rel_tol) {
  static constexpr double a2 = 1.0 / 5.0, a3 = 3.0 / 10.0, a4 = 3.0 / 5.0,
                          a5 = 1.0, a6 = 7.0 / 8.0;
  static constexpr double b21 = 1.0 / 5.0;
  static constexpr double b31 = 3.0 / 40.0, b32 = 9.0 / 40.0;
  static constexpr double b41 = 3.0 / 10.0, b42 = -9.0 / 10.0, b43 = 6.0 / 5.0;
  static constexpr double b51 = -11.0 / 54.0, b52 = 5.0 / 2.0,
                          b53 = -70.0 / 27.0, b54 = 35.0 / 27.0;
  static constexpr double b61 = 1631.0 / 55296.0, b62 = 175.0 / 512.0,
                          b63 = 575.0 / 13824.0, b64 = 44275.0 / 110592.0,
                          b65 = 253.0 / 4096.0;
  static constexpr double c1 = 37.0 / 378.0, c3 = 250.0 / 621.0,
                          c4 = 125.0 / 594.0, c6 = 512.0 / 1771.0;
  static constexpr double d1 = c1 - 2825.0 / 27648.0, d3 = c3 - 18575.0 / 48384.0,
                          d4 = c4 - 13525.0 / 55296.0, d5 = -277.0 / 14336.0,
                          d6 = c6 - 1.0 / 4.0;

  const std::size_t n = x.size();
  std::vector<double> tmp(n);
  std::vector<double> k1 = f(t, x);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * b21 * k1[i];
  std::vector<double> k2 = f(t + a2 * h, tmp);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * (b31 * k1[i] + b32 * k2[i]);
  std::vector<double> k3 = f(t + a3 * h, tmp);
  for (std::size_t i = 0; i < n; ++i) {
    tmp[i] = x[i] + h * (b41 * k1[i] + b42 * k2[i] + b43 * k3[i]);
  }
  std::vector<double> k4 = f(t + a4 * h, tmp);
  for (std::size_t i = 0; i < n; ++i) {
    tmp[i] = x[i] + h * (b51 * k1[i] + b52 * k2[i] + b53 * k3[i] + b54 * k4[i]);
  }
  std::vector<double> k5 = f(t + a5 * h, tmp);
  for (std::size_t i = 0; i < n; ++i) {
    tmp[i] = x[i] + h * (b61 * k1[i] + b62 * k2[i] + b63 * k3[i] + b64 * k4[i] +
                         b65 * k5[i]);
  }
  std::vector<double> k6 = f(t + a6 * h, tmp);

  Rk45Result res;
  res.x.resize(n);
  res.err_ratio = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    res.x[i] = x[i] + h * (c1 * k1[i] + c3 * k3[i] + c4 * k4[i] + c6 * k6[i]);
    const double err = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                            d6 * k6[i]);
    const double scale =
        abs_tol + rel_tol * std::max(std::abs(x[i]), std::abs(res.x[i]));
    const double ratio = std::abs(err) / scale;
    if (std::isfinite(ratio)) {
      res.err_ratio = std::max(res.err_ratio, ratio);
    } else {
      res.err_ratio = std::numeric_limits<double>::infinity();
    }
  }
  return res;
}

// Advance from ta to tb (either direction) with adaptive RK45.
std::vector<double> adaptive_advance(const VectorField& f, std::vector<double> x,
                                     double ta, double tb, const IntegratorSpec& spec) {
  const double direction = (tb >= ta) ? 1.0 : -1.0;
  double t = ta;
  double h = tb - ta;
  while (direction * (tb - t) > kMinStep) {
    if (direction * h > direction * (tb - t)) h = tb - t;
    Rk45Result trial = rk45_step(f, t, x, h, spec.abs_tol, spec.rel_tol);
    const bool accept = trial.err_ratio <= 1.0 && std::isfinite(trial.err_ratio);
    if (accept) {
      t += h;
      x = std::move(trial.x);
      if (spec.clamp) clamp_unit_box(x);
      double grow = 5.0;
      if (trial.err_ratio > 0.0) {
        grow = std::min(5.0, 0.9 * std::pow(trial.err_ratio, -0.2));
      }
      h *= std::max(1.0, grow);
    } else {
      double shrink = 0.2;
      if (std::isfinite(trial.err_ratio) && trial.err_ratio > 0.0) {
        shrink = std::clamp(0.9 * std::pow(trial.err_ratio, -0.25), 0.2, 0.9);
      }
      h *= shrink;
      if (std::abs(h) < kMinStep) {
        std::ostringstream msg;
        msg << "adaptive step underflow at t=" << t << " (|h|=" << std::abs(h) << ")";
        throw IntegrationError(msg.str());
      }
    }
  }
  return x;
}

std::vector<double> make_grid(double t0, double t1, double base_step) {
  const double span = t1 - t0;
  const std::size_t m =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / base_step - 1e-9)));
  const double h = span / static_cast<double>(m);
  std::vector<double> times(m + 1);
  for (std::size_t k = 0; k <= m; ++k) times[k] = t0 + h * static_cast<double>(k);
  times[m] = t1;
  return times;
}

}  // namespace

std::vector<double> SampledPath::at(double t) const {
  if (times.empty()) throw ConfigError("SampledPath::at: empty path");
  if (t <= times.front()) return values.front();
  if (t >= times.back()) return values.back();
  auto it = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - times.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - times[lo]) / (times[hi] - times[lo]);
  std::vector<double> out(values[lo].size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (1.0 - w) * values[lo][i] + w * values[hi][i];
  }
  return out;
}

PiecewiseLinear::PiecewiseLinear(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() != values_.size() || times_.size() < 2) {
    throw ConfigError("PiecewiseLinear: need matching arrays with >= 2 samples");
  }
  for (std::size_t k = 1; k < times_.size(); ++k) {
    if (!(times_[k] > times_[k - 1])) {
      throw ConfigError("PiecewiseLinear: times must be strictly increasing");
    }
  }
  const double first = times_[1] - times_[0];
  uniform_ = true;
  for (std::size_t k = 1; k + 1 < times_.size(); ++k) {
    if (std::abs((times_[k + 1] - times_[k]) - first) > 1e-12 * std::max(1.0, first)) {
      uniform_ = false;
      break;
    }
  }
  dt_ = first;
}

double PiecewiseLinear::operator()(double t) const {
  if (is_constant_) return constant_;
  if (t <= times_.front()) return values_.front();
  if (t >= times_.back()) return values_.back();
  std::size_t lo;
  if (uniform_) {
    lo = static_cast<std::size_t>((t - times_.front()) / dt_);
    lo = std::min(lo, times_.size() - 2);
  } else {
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    lo = static_cast<std::size_t>(it - times_.begin()) - 1;
  }
  const double w = (t - times_[lo]) / (times_[lo + 1] - times_[lo]);
  return (1.0 - w) * values_[lo] + w * values_[lo + 1];
}

SampledPath integrate_forward(const VectorField& f, const std::vector<double>& x0,
                              double t0, double t1, const IntegratorSpec& spec) {
  spec.validate();
  if (!(t1 > t0)) throw ConfigError("integrate_forward: t1 must exceed t0");

  SampledPath path;
  path.times = make_grid(t0, t1, spec.base_step);
  path.values.resize(path.times.size());
  path.values[0] = x0;
  if (spec.clamp) clamp_unit_box(path.values[0]);

  for (std::size_t k = 0; k + 1 < path.times.size(); ++k) {
    const double ta = path.times[k];
    const double tb = path.times[k + 1];
    if (spec.method == OdeMethod::Rk4Fixed) {
      path.values[k + 1] = rk4_step(f, ta, path.values[k], tb - ta);
      if (spec.clamp) clamp_unit_box(path.values[k + 1]);
    } else {
      path.values[k + 1] = adaptive_advance(f, path.values[k], ta, tb, spec);
    }
  }
  return path;
}

SampledPath integrate_backward(const VectorField& f, const std::vector<double>& xT,
                               double t1, double t0, const IntegratorSpec& spec) {
  spec.validate();
  if (!(t1 > t0)) throw ConfigError("integrate_backward: t1 must exceed t0");

  SampledPath path;
  path.times = make_grid(t0, t1, spec.base_step);
  const std::size_t m = path.times.size() - 1;
  path.values.resize(path.times.size());
  path.values[m] = xT;
  if (spec.clamp) clamp_unit_box(path.values[m]);

  for (std::size_t k = m; k > 0; --k) {
    const double ta = path.times[k];
    const double tb = path.times[k - 1];
    if (spec.method == OdeMethod::Rk4Fixed) {
      path.values[k - 1] = rk4_step(f, ta, path.values[k], tb - ta);
      if (spec.clamp) clamp_unit_box(path.values[k - 1]);
    } else {
      path.values[k - 1] = adaptive_advance(f, path.values[k], ta, tb, spec);
    }
  }
  return path;
}

}  // namespace trustgame
