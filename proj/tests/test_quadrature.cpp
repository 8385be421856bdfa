#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "riswoc/quadrature.hpp"

using namespace riswoc;

TEST_CASE("polynomials are integrated exactly") {
  bool conv = false;
  const double v = integrate([](double x) { return 3.0 * x * x; }, 0.0, 2.0,
                             1e-14, 1e-12, &conv);
  CHECK(conv);
  CHECK(v == doctest::Approx(8.0).epsilon(1e-13));
}

TEST_CASE("oscillatory integrand converges adaptively") {
  bool conv = false;
  // int_0^10 sin(20 x) dx = (1 - cos(200)) / 20
  const double v = integrate([](double x) { return std::sin(20.0 * x); }, 0.0,
                             10.0, 1e-14, 1e-11, &conv);
  CHECK(conv);
  CHECK(v == doctest::Approx((1.0 - std::cos(200.0)) / 20.0).epsilon(1e-9));
}

TEST_CASE("semi-infinite integrals via rational mapping") {
  bool conv = false;
  const double v = integrate_to_inf([](double x) { return std::exp(-x); },
                                    0.0, 1e-14, 1e-11, &conv);
  CHECK(conv);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-10));

  const double g = integrate_to_inf(
      [](double x) { return std::exp(-x * x); }, 0.0, 1e-14, 1e-11, &conv);
  CHECK(g == doctest::Approx(0.5 * std::sqrt(std::numbers::pi)).epsilon(1e-10));
}

TEST_CASE("complex-valued integrands are supported") {
  bool conv = false;
  const std::complex<double> v = integrate_adaptive<std::complex<double>>(
      [](double x) {
        return std::exp(std::complex<double>(0.0, x));
      },
      0.0, std::numbers::pi, 1e-14, 1e-12, &conv);
  CHECK(conv);
  CHECK(v.real() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(v.imag() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("non-convergence is reported, not hidden") {
  bool conv = true;
  // Far too oscillatory for a four-segment budget.
  (void)integrate_adaptive<double>(
      [](double x) { return std::sin(1000.0 * x); }, 0.0, 1.0, 0.0, 1e-14,
      &conv, 4);
  CHECK_FALSE(conv);
}
