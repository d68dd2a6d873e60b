#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>

#include "trustgame/core.hpp"
#include "trustgame/ode.hpp"

using namespace trustgame;

namespace {

IntegratorSpec rk4(double step, bool clamp = true) {
  return IntegratorSpec{OdeMethod::Rk4Fixed, step, 1e-8, 1e-8, clamp};
}

IntegratorSpec rk45(double step, bool clamp = true) {
  return IntegratorSpec{OdeMethod::Rk45Adaptive, step, 1e-10, 1e-10, clamp};
}

const VectorField kZeroField = [](double, const std::vector<double>& x) {
  return std::vector<double>(x.size(), 0.0);
};

}  // namespace

TEST_CASE("zero field leaves the state constant, both directions") {
  const std::vector<double> x0{0.25, 0.75};
  const auto fwd = integrate_forward(kZeroField, x0, 0.0, 3.0, rk45(0.1));
  for (const auto& v : fwd.values) CHECK(v == x0);
  const auto bwd = integrate_backward(kZeroField, x0, 3.0, 0.0, rk45(0.1));
  for (const auto& v : bwd.values) CHECK(v == x0);
}

TEST_CASE("constant-control trust dynamics match the closed form") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double a = unit(rng);
    const double S = 2.0 * unit(rng);
    const double x0 = unit(rng);
    const VectorField field = [&](double, const std::vector<double>& x) {
      return std::vector<double>{a * (1.0 - x[0]) - S * x[0] - (1.0 - a) * x[0]};
    };
    for (const auto& spec : {rk4(0.01), rk45(0.05)}) {
      const auto path = integrate_forward(field, {x0}, 0.0, 5.0, spec);
      for (std::size_t k = 0; k < path.times.size(); ++k) {
        const double exact = closed_form_trust(path.times[k], x0, a, S);
        CHECK(std::abs(path.values[k][0] - exact) <= 1e-6);
      }
    }
  }
}

TEST_CASE("x0=0, alpha=0.5, S=0 reaches 0.25 at t=ln 2") {
  const VectorField field = [](double, const std::vector<double>& x) {
    return std::vector<double>{0.5 - x[0]};
  };
  const auto path = integrate_forward(field, {0.0}, 0.0, std::log(2.0), rk45(0.01));
  CHECK(std::abs(path.values.back()[0] - 0.25) <= 1e-6);
}

TEST_CASE("backward integration of lambda_dot = lambda hits the exponential") {
  const VectorField field = [](double, const std::vector<double>& lam) {
    return std::vector<double>{lam[0]};
  };
  const double T = 4.0;
  const auto path = integrate_backward(field, {1.0}, T, 0.0, rk45(0.01, false));
  for (std::size_t k = 0; k < path.times.size(); ++k) {
    const double exact = std::exp(path.times[k] - T);
    CHECK(std::abs(path.values[k][0] - exact) <= 1e-6);
  }
  CHECK(path.values.back()[0] == 1.0);  // terminal condition exact
}

TEST_CASE("forward then backward recovers the initial state") {
  const VectorField field = [](double t, const std::vector<double>& x) {
    return std::vector<double>{0.7 * (1.0 - x[0]) - 0.3 * x[0] + 0.05 * std::sin(t)};
  };
  const auto fwd = integrate_forward(field, {0.2}, 0.0, 3.0, rk45(0.05, false));
  const auto bwd = integrate_backward(field, fwd.values.back(), 3.0, 0.0,
                                      rk45(0.05, false));
  CHECK(std::abs(bwd.values.front()[0] - 0.2) <= 1e-5);
}

TEST_CASE("halving the RK4 step cuts the error by at least 12x") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double a = unit(rng);
    const double S = 2.0 * unit(rng);
    const double x0 = unit(rng);
    const VectorField field = [&](double, const std::vector<double>& x) {
      return std::vector<double>{a - (1.0 + S) * x[0]};
    };
    const auto err = [&](double step) {
      const auto path = integrate_forward(field, {x0}, 0.0, 2.0, rk4(step, false));
      double worst = 0.0;
      for (std::size_t k = 0; k < path.times.size(); ++k) {
        worst = std::max(worst, std::abs(path.values[k][0] -
                                         closed_form_trust(path.times[k], x0, a, S)));
      }
      return worst;
    };
    const double coarse = err(0.1);
    const double fine = err(0.05);
    if (coarse > 1e-12) {  // below that, roundoff dominates
      CHECK(coarse / fine >= 12.0);
    }
  }
}

TEST_CASE("identical inputs give bit-identical trajectories") {
  const VectorField field = [](double t, const std::vector<double>& x) {
    return std::vector<double>{std::sin(3.0 * t) * (1.0 - x[0]) - 0.4 * x[0],
                               0.3 - x[1]};
  };
  const auto a = integrate_forward(field, {0.1, 0.9}, 0.0, 2.0, rk45(0.01));
  const auto b = integrate_forward(field, {0.1, 0.9}, 0.0, 2.0, rk45(0.01));
  REQUIRE(a.values.size() == b.values.size());
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    CHECK(std::memcmp(a.values[k].data(), b.values[k].data(),
                      a.values[k].size() * sizeof(double)) == 0);
  }
}

TEST_CASE("adaptive step underflow raises IntegrationError") {
  const VectorField field = [](double, const std::vector<double>&) {
    return std::vector<double>{std::numeric_limits<double>::quiet_NaN()};
  };
  CHECK_THROWS_AS(integrate_forward(field, {0.5}, 0.0, 1.0, rk45(0.1)),
                  IntegrationError);
}

TEST_CASE("clamp keeps states inside the unit box") {
  const VectorField field = [](double, const std::vector<double>&) {
    return std::vector<double>{-5.0};
  };
  const auto path = integrate_forward(field, {0.1}, 0.0, 1.0, rk4(0.05, true));
  for (const auto& v : path.values) CHECK(v[0] >= 0.0);
}

TEST_CASE("piecewise-linear signals interpolate and clamp at the ends") {
  const PiecewiseLinear sig({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
  CHECK(sig(0.5) == doctest::Approx(0.5));
  CHECK(sig(1.5) == doctest::Approx(0.5));
  CHECK(sig(-1.0) == 0.0);
  CHECK(sig(5.0) == 0.0);
  const PiecewiseLinear flat(0.7);
  CHECK(flat(123.0) == 0.7);
  CHECK_THROWS_AS(PiecewiseLinear({1.0, 0.5}, {0.0, 1.0}), ConfigError);
}

TEST_CASE("integrator spec validation") {
  IntegratorSpec spec;
  spec.base_step = 0.0;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
}
