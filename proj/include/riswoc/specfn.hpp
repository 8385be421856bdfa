#pragma once

// Numerical Mellin-Barnes evaluation of Meijer G, univariate Fox H, and the
// bivariate Fox H instances used by the channel statistics. An instance is
// described by explicit lists of gamma-argument coefficients; contour
// abscissas are auto-selected inside the feasibility polytope implied by
// numerator-gamma positivity, and vertical-line quadrature is truncated
// symmetrically with a doubling convergence check.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "riswoc/gamma.hpp"
#include "riswoc/quadrature.hpp"

namespace riswoc {

struct contour_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Pole family of a gamma factor. Numerator factors constrain the contour
// (Re(offset + slope * c) > 0); denominator factors never contribute poles.
enum class Position { numerator_left, numerator_right, denominator };

// Gamma(offset + slope * s), raised to +1 (numerator) or -1 (denominator).
struct GammaTerm {
  double offset = 0.0;
  double slope = 0.0;
  Position pos = Position::numerator_left;
};

// Gamma(offset + slope_s * s + slope_t * t) coupling both contours.
struct JointGammaTerm {
  double offset = 0.0;
  double slope_s = 0.0;
  double slope_t = 0.0;
  Position pos = Position::numerator_left;
};

inline GammaTerm num(double offset, double slope) {
  return {offset, slope,
          slope >= 0.0 ? Position::numerator_left : Position::numerator_right};
}
inline GammaTerm den(double offset, double slope) {
  return {offset, slope, Position::denominator};
}
inline JointGammaTerm num2(double offset, double slope_s, double slope_t) {
  return {offset, slope_s, slope_t,
          slope_s + slope_t >= 0.0 ? Position::numerator_left
                                   : Position::numerator_right};
}
inline JointGammaTerm den2(double offset, double slope_s, double slope_t) {
  return {offset, slope_s, slope_t, Position::denominator};
}

struct HCoeffs {
  std::vector<GammaTerm> s_terms;          // univariate list / first contour
  std::vector<GammaTerm> t_terms;          // second contour (bivariate only)
  std::vector<JointGammaTerm> joint_terms; // coupling terms (bivariate only)
  std::optional<double> contour_s;
  std::optional<double> contour_t;
  double truncation = 200.0;
  double quad_tolerance = 1e-8;
  // Absolute floor below which the integral is accepted as converged; lets
  // callers evaluating exponentially small tails avoid chasing relative
  // accuracy through catastrophic cancellation.
  double abs_floor = 1e-300;
};

struct EvalDiag {
  bool converged = true;
  double imag_residual = 0.0;
  double abscissa_s = 0.0;
  double abscissa_t = 0.0;
  double truncation_s = 0.0;
  double truncation_t = 0.0;
};

namespace detail {

inline constexpr double kPoleMargin = 1e-6;

// Feasible open interval for a single contour: every numerator gamma needs
// offset + slope * c > margin.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  void constrain(double offset, double slope) {
    if (slope > 0.0) {
      lo = std::max(lo, (kPoleMargin - offset) / slope);
    } else if (slope < 0.0) {
      hi = std::min(hi, (offset - kPoleMargin) / (-slope));
    } else if (offset <= kPoleMargin) {
      lo = 1.0;
      hi = 0.0;  // constant non-positive gamma argument: infeasible
    }
  }
  bool feasible() const { return lo < hi; }
  double clamped_lo() const { return std::isinf(lo) ? hi - 4.0 : lo; }
  double clamped_hi() const { return std::isinf(hi) ? lo + 4.0 : hi; }
};

inline Interval contour_interval(const std::vector<GammaTerm>& terms) {
  Interval iv;
  for (const auto& t : terms) {
    if (t.pos == Position::denominator) continue;
    iv.constrain(t.offset, t.slope);
  }
  return iv;
}

// Exponential decay rate of |integrand| along Im(s): (pi/2) times the
// difference of numerator and denominator |slope| sums.
inline double decay_rate_s(const HCoeffs& c) {
  double rate = 0.0;
  for (const auto& t : c.s_terms)
    rate += (t.pos == Position::denominator ? -1.0 : 1.0) * std::fabs(t.slope);
  for (const auto& t : c.joint_terms)
    rate +=
        (t.pos == Position::denominator ? -1.0 : 1.0) * std::fabs(t.slope_s);
  return 0.5 * std::numbers::pi * rate;
}

inline double decay_rate_t(const HCoeffs& c) {
  double rate = 0.0;
  for (const auto& t : c.t_terms)
    rate += (t.pos == Position::denominator ? -1.0 : 1.0) * std::fabs(t.slope);
  for (const auto& t : c.joint_terms)
    rate +=
        (t.pos == Position::denominator ? -1.0 : 1.0) * std::fabs(t.slope_t);
  return 0.5 * std::numbers::pi * rate;
}

// Initial truncation height: enough for the decay envelope to reach ~1e-18,
// never more than the configured ceiling.
inline double initial_truncation(double rate, double ceiling) {
  if (rate <= 0.0) return ceiling;
  return std::min(ceiling, std::max(20.0, 42.0 / rate));
}

inline std::complex<double> log_terms_1d(const std::vector<GammaTerm>& terms,
                                         std::complex<double> s) {
  std::complex<double> acc = 0.0;
  for (const auto& t : terms) {
    const std::complex<double> lg = log_gamma_complex(t.offset + t.slope * s);
    acc += (t.pos == Position::denominator) ? -lg : lg;
  }
  return acc;
}

}  // namespace detail

// Auto-selects the univariate contour abscissa: midpoint of the feasibility
// interval (clamped when one-sided).
inline double select_contour(const HCoeffs& coeffs) {
  auto iv = detail::contour_interval(coeffs.s_terms);
  if (!iv.feasible())
    throw contour_error("no feasible contour abscissa for univariate instance");
  if (coeffs.contour_s) {
    if (!(*coeffs.contour_s >= iv.lo && *coeffs.contour_s <= iv.hi))
      throw contour_error(
          "requested contour abscissa lies outside the feasible strip");
    return *coeffs.contour_s;
  }
  return 0.5 * (iv.clamped_lo() + iv.clamped_hi());
}

// Univariate Mellin-Barnes integral:
//   (1 / 2*pi*i) * Int Theta(s) x^{-s} ds
// along the vertical line Re(s) = c, evaluated as (1/pi) * Int_0^T Re(...) dy
// using conjugate symmetry of the integrand for real coefficients.
inline double mellin_barnes(const HCoeffs& coeffs, double x,
                            EvalDiag* diag = nullptr) {
  if (!(x > 0.0)) throw std::domain_error("mellin_barnes: argument must be > 0");
  const double c = select_contour(coeffs);
  const double lx = std::log(x);
  auto integrand = [&](double y) {
    const std::complex<double> s(c, y);
    const std::complex<double> v =
        std::exp(detail::log_terms_1d(coeffs.s_terms, s) - s * lx);
    return v.real();
  };
  const double rate = detail::decay_rate_s(coeffs);
  double T = detail::initial_truncation(rate, coeffs.truncation);
  const double tol = coeffs.quad_tolerance;
  const double floor = coeffs.abs_floor;
  bool q_ok = true;
  double value = integrate_adaptive<double>(integrand, 0.0, T, floor,
                                            0.1 * tol, &q_ok);
  bool converged = false;
  for (int pass = 0; pass < 7; ++pass) {
    // A value already below the caller's floor is indistinguishable from
    // zero; chasing its tails only accumulates cancellation noise.
    if (std::fabs(value) <= floor) {
      converged = true;
      break;
    }
    bool tail_ok = true;
    const double tail = integrate_adaptive<double>(integrand, T, 2.0 * T,
                                                   floor, 0.1 * tol, &tail_ok);
    value += tail;
    T *= 2.0;
    if (std::fabs(tail) <= std::max(tol * std::fabs(value), floor)) {
      converged = true;
      break;
    }
  }
  if (diag) {
    diag->converged = converged && q_ok;
    diag->abscissa_s = c;
    diag->truncation_s = T;
    diag->imag_residual = 0.0;  // symmetric half-range form is exactly real
  }
  return value / std::numbers::pi;
}

// Selects (c_s, c_t) for a bivariate instance as the Chebyshev center of
// the feasibility polytope {a_i cs + b_i ct + c_i > 0} implied by the
// numerator gammas (joint terms included), bounded by a large working box.
// The center is the exact solution of the small max-min-slack linear
// program, found by enumerating active-constraint triples.
inline std::pair<double, double> select_contours_bivariate(
    const HCoeffs& coeffs) {
  if (coeffs.contour_s && coeffs.contour_t)
    return {*coeffs.contour_s, *coeffs.contour_t};
  struct Halfplane {
    double a, b, c, norm;
  };
  std::vector<Halfplane> hp;
  auto add = [&](double a, double b, double c) {
    hp.push_back({a, b, c, std::hypot(a, b)});
  };
  for (const auto& g : coeffs.s_terms)
    if (g.pos != Position::denominator) add(g.slope, 0.0, g.offset);
  for (const auto& g : coeffs.t_terms)
    if (g.pos != Position::denominator) add(0.0, g.slope, g.offset);
  for (const auto& g : coeffs.joint_terms)
    if (g.pos != Position::denominator)
      add(g.slope_s, g.slope_t, g.offset);
  // Keep the working box small: drifting far from the binding constraints
  // inflates |x^{-s} y^{-t}| and destroys the quadrature through
  // cancellation, so a near-pole center is numerically preferable.
  const double box = 6.0;
  add(1.0, 0.0, box);
  add(-1.0, 0.0, box);
  add(0.0, 1.0, box);
  add(0.0, -1.0, box);

  double best_slack = -1.0, best_s = 0.0, best_t = 0.0;
  const std::size_t n = hp.size();
  auto feasible_slack = [&](double x, double y) {
    double s = std::numeric_limits<double>::infinity();
    for (const auto& h : hp) {
      if (h.norm == 0.0) continue;
      s = std::min(s, (h.a * x + h.b * y + h.c) / h.norm);
    }
    return s;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        // Solve a_m x + b_m y - norm_m * s = -c_m for the triple (i, j, k).
        const Halfplane* tri[3] = {&hp[i], &hp[j], &hp[k]};
        double mat[3][4];
        for (int row = 0; row < 3; ++row) {
          mat[row][0] = tri[row]->a;
          mat[row][1] = tri[row]->b;
          mat[row][2] = -tri[row]->norm;
          mat[row][3] = -tri[row]->c;
        }
        // Gaussian elimination with partial pivoting.
        bool singular = false;
        for (int col = 0; col < 3 && !singular; ++col) {
          int piv = col;
          for (int row = col + 1; row < 3; ++row)
            if (std::fabs(mat[row][col]) > std::fabs(mat[piv][col])) piv = row;
          if (std::fabs(mat[piv][col]) < 1e-12) {
            singular = true;
            break;
          }
          std::swap(mat[col], mat[piv]);
          for (int row = 0; row < 3; ++row) {
            if (row == col) continue;
            const double f = mat[row][col] / mat[col][col];
            for (int cc = col; cc < 4; ++cc) mat[row][cc] -= f * mat[col][cc];
          }
        }
        if (singular) continue;
        const double x = mat[0][3] / mat[0][0];
        const double y = mat[1][3] / mat[1][1];
        const double s = mat[2][3] / mat[2][2];
        if (!(s > best_slack)) continue;
        if (feasible_slack(x, y) + 1e-9 < s) continue;
        best_slack = s;
        best_s = x;
        best_t = y;
      }
  if (best_slack <= detail::kPoleMargin)
    throw contour_error(
        "no feasible (c_s, c_t) pair for bivariate instance");
  return {best_s, best_t};
}

// Bivariate Mellin-Barnes integral:
//   (1 / (2*pi*i)^2) * IntInt Theta(s, t) x^{-s} y^{-t} ds dt
// over two vertical contours. The inner (s) integral runs over the full
// truncated line; conjugate symmetry halves the outer (t) range.
inline double mellin_barnes_bivariate(const HCoeffs& coeffs, double x,
                                      double y, EvalDiag* diag = nullptr) {
  if (!(x > 0.0) || !(y > 0.0))
    throw std::domain_error(
        "mellin_barnes_bivariate: arguments must be > 0");
  const auto [cs, ct] = select_contours_bivariate(coeffs);
  const double lx = std::log(x), ly = std::log(y);

  auto theta = [&](double u, double v) {
    const std::complex<double> s(cs, u), t(ct, v);
    std::complex<double> acc = detail::log_terms_1d(coeffs.s_terms, s) +
                               detail::log_terms_1d(coeffs.t_terms, t);
    for (const auto& g : coeffs.joint_terms) {
      const std::complex<double> lg =
          log_gamma_complex(g.offset + g.slope_s * s + g.slope_t * t);
      acc += (g.pos == Position::denominator) ? -lg : lg;
    }
    return std::exp(acc - s * lx - t * ly);
  };

  const double rate_s = detail::decay_rate_s(coeffs);
  const double rate_t = detail::decay_rate_t(coeffs);
  double Ts = detail::initial_truncation(rate_s, coeffs.truncation);
  double Tt = detail::initial_truncation(rate_t, coeffs.truncation);
  const double tol = coeffs.quad_tolerance;
  const double floor = coeffs.abs_floor;

  // Subdivision budgets are capped: when cancellation noise dominates, more
  // segments cannot improve the estimate and only burn time.
  auto inner = [&](double v, double ts) {
    return integrate_adaptive<std::complex<double>>(
        [&](double u) { return theta(u, v); }, -ts, ts, floor, 0.05 * tol,
        nullptr, 300);
  };

  // One-time inner-truncation check at the outer abscissa.
  {
    const std::complex<double> i1 = inner(0.0, Ts);
    for (int pass = 0; pass < 5; ++pass) {
      const std::complex<double> i2 = inner(0.0, 2.0 * Ts);
      if (std::abs(i2 - i1) <= tol * std::max(std::abs(i2), 1e-300)) break;
      Ts *= 2.0;
    }
  }

  auto outer_integrand = [&](double v) { return inner(v, Ts).real(); };
  double value = integrate_adaptive<double>(outer_integrand, 0.0, Tt, floor,
                                            0.1 * tol, nullptr, 600);
  bool converged = false;
  for (int pass = 0; pass < 6; ++pass) {
    if (std::fabs(value) <= floor) {
      converged = true;
      break;
    }
    const double tail =
        integrate_adaptive<double>(outer_integrand, Tt, 2.0 * Tt, floor,
                                   0.1 * tol, nullptr, 600);
    value += tail;
    Tt *= 2.0;
    if (std::fabs(tail) <= std::max(tol * std::fabs(value), floor)) {
      converged = true;
      break;
    }
  }
  if (diag) {
    diag->converged = converged;
    diag->abscissa_s = cs;
    diag->abscissa_t = ct;
    diag->truncation_s = Ts;
    diag->truncation_t = Tt;
    diag->imag_residual = 0.0;
  }
  const double two_pi = 2.0 * std::numbers::pi;
  return 2.0 * value / (two_pi * two_pi);
}

// Meijer G: a Fox-H instance whose slopes are all unity.
inline double meijer_g(const HCoeffs& coeffs, double x,
                       EvalDiag* diag = nullptr) {
  for (const auto& t : coeffs.s_terms) {
    if (std::fabs(std::fabs(t.slope) - 1.0) > 1e-12)
      throw std::invalid_argument("meijer_g: all slopes must be +/-1");
  }
  return mellin_barnes(coeffs, x, diag);
}

inline double fox_h(const HCoeffs& coeffs, double x, EvalDiag* diag = nullptr) {
  return mellin_barnes(coeffs, x, diag);
}

inline double fox_h_bivariate(const HCoeffs& coeffs, double x, double y,
                              EvalDiag* diag = nullptr) {
  return mellin_barnes_bivariate(coeffs, x, y, diag);
}

}  // namespace riswoc
