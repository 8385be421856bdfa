#pragma once

// First hop: N-element reflective cascade with Nakagami-m and Rayleigh
// factors. The sum of per-element products is moment-matched to a squared
// generalized-K law, which drives the SNR PDF/CDF and their asymptotics.

#include <array>
#include <cmath>
#include <stdexcept>

#include "riswoc/gamma.hpp"
#include "riswoc/specfn.hpp"

namespace riswoc {

struct RfLinkParams {
  int n = 1;             // reflecting elements
  double m = 1.0;        // Nakagami fading parameter (>= 0.5)
  double mean_snr = 1.0; // linear scale
};

struct RfLinkFit {
  double k_w = 0.0;
  double m_w = 0.0;
  double omega_w = 0.0;  // mean power of the cascade amplitude sum
  double xi_tilde = 0.0; // k_w * m_w / omega_w
  double xi = 0.0;       // xi_tilde / mean_snr
  double t_min = 0.0;    // min(k_w, m_w)
  double mean_snr = 1.0;
  bool conjugate_fallback = false;
};

// n-th raw moment of one product factor alpha * beta: alpha Nakagami-m with
// unit mean power, beta Rayleigh with E[beta^2] = 1.
inline double product_moment(double m, int n) {
  if (m < 0.5) throw std::domain_error("product_moment: m must be >= 0.5");
  if (n < 0) throw std::domain_error("product_moment: n must be >= 0");
  const double h = 0.5 * n;
  return std::exp(std::lgamma(m + h) - std::lgamma(m)) / std::pow(m, h) *
         std::tgamma(1.0 + h);
}

// Raw moments 0..6 of the sum of N i.i.d. product factors, via iterated
// binomial convolution.
inline std::array<double, 7> sum_moments(const RfLinkParams& p) {
  std::array<double, 7> mu{};
  for (int n = 0; n <= 6; ++n) mu[n] = product_moment(p.m, n);
  std::array<double, 7> acc = mu;
  for (int j = 2; j <= p.n; ++j) {
    std::array<double, 7> next{};
    for (int n = 0; n <= 6; ++n) {
      double binom = 1.0;
      for (int i = 0; i <= n; ++i) {
        next[n] += binom * acc[i] * mu[n - i];
        binom = binom * (n - i) / (i + 1.0);
      }
    }
    acc = next;
  }
  return acc;
}

inline double sum_moment(const RfLinkParams& p, int n) {
  if (n < 0 || n > 6)
    throw std::domain_error("sum_moment: only orders 0..6 are supported");
  return sum_moments(p)[static_cast<std::size_t>(n)];
}

// Moment-matched squared generalized-K fit. Matching the 2nd and 3rd
// normalized moments of the squared sum reduces to a quadratic in the
// reciprocal shape parameters; a complex root pair falls back to the
// modulus (conjugate fallback).
inline RfLinkFit fit_kg(const RfLinkParams& p) {
  if (p.n < 1) throw std::domain_error("fit_kg: n must be >= 1");
  const auto mu = sum_moments(p);
  const double omega_w = mu[2];
  const double r2 = mu[4] / (mu[2] * mu[2]);
  const double r3 = mu[6] / (mu[2] * mu[2] * mu[2]);
  const double qq = (r3 / r2 - 2.0 * r2 + 1.0) / 2.0;
  const double pp = r2 - 1.0 - qq;
  const double disc = pp * pp - 4.0 * qq;
  double u, v;
  bool conj = false;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    u = 0.5 * (pp + root);
    v = 0.5 * (pp - root);
  } else {
    u = v = std::sqrt(qq);
    conj = true;
  }
  if (!(u > 0.0) || !(v > 0.0))
    throw std::runtime_error("fit_kg: moment system has no positive solution");
  RfLinkFit fit;
  fit.k_w = 1.0 / std::min(u, v);
  fit.m_w = 1.0 / std::max(u, v);
  fit.omega_w = omega_w;
  fit.xi_tilde = fit.k_w * fit.m_w / omega_w;
  fit.mean_snr = p.mean_snr;
  fit.xi = fit.xi_tilde / p.mean_snr;
  fit.t_min = std::min(fit.k_w, fit.m_w);
  fit.conjugate_fallback = conj;
  return fit;
}

// SNR density of the first hop (Bessel form).
inline double snr1_pdf(const RfLinkFit& fit, double gamma1) {
  if (!(gamma1 > 0.0)) throw std::domain_error("snr1_pdf: gamma1 must be > 0");
  const double k = fit.k_w, m = fit.m_w, xi = fit.xi;
  const double half_sum = 0.5 * (k + m);
  const double log_pref = half_sum * std::log(xi) +
                          (half_sum - 1.0) * std::log(gamma1) -
                          std::lgamma(k) - std::lgamma(m);
  return 2.0 * std::exp(log_pref) *
         std::cyl_bessel_k(std::fabs(k - m), 2.0 * std::sqrt(xi * gamma1));
}

// SNR distribution function of the first hop (Mellin-Barnes form).
inline double snr1_cdf(const RfLinkFit& fit, double gamma1,
                       EvalDiag* diag = nullptr) {
  if (gamma1 < 0.0) throw std::domain_error("snr1_cdf: gamma1 must be >= 0");
  if (gamma1 == 0.0) return 0.0;
  HCoeffs g;
  g.s_terms = {num(fit.k_w, 1.0), num(fit.m_w, 1.0), num(0.0, -1.0),
               den(1.0, -1.0)};
  g.contour_s = -0.5 * std::min({fit.k_w, fit.m_w, 1.0});
  const double value = meijer_g(g, fit.xi * gamma1, diag) /
                       std::exp(std::lgamma(fit.k_w) + std::lgamma(fit.m_w));
  return value;
}

// Leading high-SNR behavior of the first-hop CDF.
inline double snr1_cdf_asymptotic(const RfLinkFit& fit, double gamma1,
                                  bool* perturbed = nullptr) {
  const double diff = perturb_near_pole(fit.k_w - fit.m_w, perturbed);
  const double t = fit.t_min;
  return std::exp(std::lgamma(std::fabs(diff)) - std::lgamma(fit.k_w) -
                  std::lgamma(fit.m_w)) /
         t * std::pow(fit.xi * gamma1, t);
}

}  // namespace riswoc
