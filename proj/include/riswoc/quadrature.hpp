#pragma once

// Adaptive Gauss-Kronrod (7-15) quadrature for real- and complex-valued
// integrands on finite intervals, with a helper for semi-infinite ranges.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace riswoc {

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
inline constexpr double kGk15Nodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,
    0.741531185599394,  0.864864423359769,  0.949107912342759,
    0.991455371120813};

inline constexpr double kGk15Weights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529};

// Embedded 7-point Gauss weights (aligned with odd Kronrod nodes).
inline constexpr double kG7Weights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

inline double abs_value(double v) { return std::fabs(v); }
inline double abs_value(const std::complex<double>& v) { return std::abs(v); }

template <typename Value, typename F>
void gk15(const F& f, double a, double b, Value& integral, double& error) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  Value kronrod{};
  Value gauss{};
  for (int i = 0; i < 15; ++i) {
    const Value fv = f(mid + half * kGk15Nodes[i]);
    kronrod += kGk15Weights[i] * fv;
    if (i % 2 == 1) gauss += kG7Weights[i / 2] * fv;
  }
  integral = half * kronrod;
  error = abs_value(half * (kronrod - gauss));
}

template <typename Value>
struct Segment {
  double a, b;
  Value integral;
  double error;
};

}  // namespace detail

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
};

// Adaptive bisection driven by per-segment Kronrod error estimates.
// Returns the integral; `converged` reports whether the global error
// estimate met max(abs_tol, rel_tol * |I|) within the subdivision budget.
template <typename Value, typename F>
Value integrate_adaptive(const F& f, double a, double b, double abs_tol,
                         double rel_tol, bool* converged = nullptr,
                         std::size_t max_segments = 2000) {
  using detail::Segment;
  std::vector<Segment<Value>> segs;
  segs.reserve(64);
  Segment<Value> root{a, b, Value{}, 0.0};
  detail::gk15(f, a, b, root.integral, root.error);
  segs.push_back(root);

  for (;;) {
    Value total{};
    double err = 0.0;
    std::size_t worst = 0;
    double worst_err = -1.0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      total += segs[i].integral;
      err += segs[i].error;
      if (segs[i].error > worst_err) {
        worst_err = segs[i].error;
        worst = i;
      }
    }
    const double goal =
        std::max(abs_tol, rel_tol * detail::abs_value(total));
    // A non-finite running total cannot be rescued by subdividing further.
    const bool finite = std::isfinite(detail::abs_value(total));
    if (err <= goal || segs.size() >= max_segments || !finite) {
      if (converged) *converged = (err <= goal) && finite;
      return total;
    }
    Segment<Value> left, right;
    const Segment<Value> s = segs[worst];
    const double mid = 0.5 * (s.a + s.b);
    left.a = s.a;
    left.b = mid;
    right.a = mid;
    right.b = s.b;
    detail::gk15(f, left.a, left.b, left.integral, left.error);
    detail::gk15(f, right.a, right.b, right.integral, right.error);
    segs[worst] = left;
    segs.push_back(right);
  }
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double abs_tol = 1e-12,
                        double rel_tol = 1e-10, bool* converged = nullptr) {
  return integrate_adaptive<double>(f, a, b, abs_tol, rel_tol, converged);
}

// Semi-infinite integral via the rational substitution x = a + t/(1-t).
inline double integrate_to_inf(const std::function<double(double)>& f,
                               double a, double abs_tol = 1e-12,
                               double rel_tol = 1e-9,
                               bool* converged = nullptr) {
  auto g = [&](double t) {
    const double u = 1.0 - t;
    const double x = a + t / u;
    return f(x) / (u * u);
  };
  return integrate_adaptive<double>(g, 0.0, 1.0 - 1e-14, abs_tol, rel_tol,
                                    converged);
}

}  // namespace riswoc
