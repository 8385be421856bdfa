#pragma once

// Gamma-family special functions: principal-branch complex log-gamma
// (Lanczos approximation with reflection), regularized incomplete gamma
// functions, and the near-pole perturbation policy used by the asymptotic
// formulas.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace riswoc {

struct gamma_pole_error : std::domain_error {
  using std::domain_error::domain_error;
};

namespace detail {

// Lanczos coefficients, g = 7, n = 9 (double-precision set).
inline constexpr double kLanczosG = 7.0;
inline constexpr double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

inline std::complex<double> log_gamma_lanczos(std::complex<double> z) {
  // Valid for Re(z) >= 0.5.
  z -= 1.0;
  std::complex<double> x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const std::complex<double> t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) -
         t + std::log(x);
}

}  // namespace detail

// Principal branch of log Gamma(z). Throws when z is (numerically) at a
// pole of Gamma.
inline std::complex<double> log_gamma_complex(std::complex<double> z) {
  using std::numbers::pi;
  if (z.imag() == 0.0 && z.real() <= 0.0 &&
      std::fabs(z.real() - std::round(z.real())) < 1e-14) {
    throw gamma_pole_error("log_gamma_complex: argument at a pole of Gamma");
  }
  if (z.real() >= 0.5) return detail::log_gamma_lanczos(z);
  // Reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z).
  // log(sin(pi z)) is computed in a form stable for large |Im z|.
  const std::complex<double> lg1mz = detail::log_gamma_lanczos(1.0 - z);
  std::complex<double> log_sin;
  const double y = z.imag();
  if (std::fabs(y) < 20.0) {
    log_sin = std::log(std::sin(pi * z));
  } else {
    // sin(pi z) = (e^{i pi z} - e^{-i pi z}) / (2i); keep the dominant
    // exponential explicit to avoid overflow.
    const std::complex<double> ipz(-pi * y, pi * z.real());
    if (y > 0.0) {
      log_sin = -ipz + std::log((std::exp(2.0 * ipz) - 1.0) /
                                std::complex<double>(0.0, 2.0));
    } else {
      log_sin = ipz + std::log((1.0 - std::exp(-2.0 * ipz)) /
                               std::complex<double>(0.0, 2.0));
    }
  }
  return std::log(pi) - log_sin - lg1mz;
}

// Gamma(x) for real x, tolerating negative non-integer arguments.
inline double gamma_real(double x) {
  if (x > 0.0) return std::tgamma(x);
  if (std::fabs(x - std::round(x)) < 1e-14) {
    throw gamma_pole_error("gamma_real: argument at a pole of Gamma");
  }
  return std::tgamma(x);
}

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
inline double gamma_p(double a, double x) {
  if (a <= 0.0) throw std::domain_error("gamma_p: a must be positive");
  if (x < 0.0) throw std::domain_error("gamma_p: x must be nonnegative");
  if (x == 0.0) return 0.0;
  const double lga = std::lgamma(a);
  if (x < a + 1.0) {
    // Series expansion.
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 500; ++n) {
      term *= x / (a + n);
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - lga);
  }
  // Continued fraction for Q(a, x) (Lentz's algorithm).
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  const double q = std::exp(-x + a * std::log(x) - lga) * h;
  return 1.0 - q;
}

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
inline double gamma_q(double a, double x) { return 1.0 - gamma_p(a, x); }

// Perturbation policy: arguments of Gamma that land within `margin` of a
// non-positive integer are nudged away by `margin` so removable pole
// configurations in the asymptotic formulas stay evaluable. Returns the
// (possibly perturbed) argument and reports whether it was moved.
inline double perturb_near_pole(double x, bool* perturbed = nullptr,
                                double margin = 1e-3) {
  const double nearest = std::round(x);
  if (nearest <= 0.0 && std::fabs(x - nearest) < margin) {
    if (perturbed) *perturbed = true;
    return nearest + (x >= nearest ? margin : -margin);
  }
  if (perturbed) *perturbed = false;
  return x;
}

}  // namespace riswoc
