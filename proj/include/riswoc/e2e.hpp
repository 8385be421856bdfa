#pragma once

// End-to-end SNR statistics at the destination. Fixed-gain amplify-and-
// forward combines the hops as g1*g2/(g2 + C) and needs the bivariate
// Mellin-Barnes forms; decode-and-forward takes min(g1, g2) and combines the
// per-hop statistics directly.

#include <cmath>
#include <stdexcept>

#include "riswoc/rf_link.hpp"
#include "riswoc/specfn.hpp"
#include "riswoc/uwoc_link.hpp"

namespace riswoc {

enum class Protocol { fixed_gain_af, df };

struct RelayConfig {
  Protocol protocol = Protocol::fixed_gain_af;
  double gain_const = 1.5;  // C; fixed-gain AF only
};

namespace detail {

// Shared structure of the AF correction integral: for each mixture
// component, a double Mellin-Barnes integral whose s-contour carries the
// optical hop and whose t-contour carries the squared generalized-K hop,
// coupled through Gamma(t - s - 1).
inline HCoeffs af_coupling_coeffs(const RfLinkFit& rf,
                                  const MixtureComponent& comp,
                                  double quad_tolerance) {
  HCoeffs h;
  h.joint_terms = {num2(-1.0, -1.0, 1.0)};
  h.s_terms = {num(comp.shape, comp.rho), num(0.0, -comp.rho), num(1.0, 1.0),
               den(1.0, -comp.rho)};
  h.t_terms = {num(rf.k_w - 1.0, 1.0), num(rf.m_w - 1.0, 1.0),
               den(0.0, 1.0)};
  // Sit both abscissas close to their lower bounds: the small arguments at
  // high mean SNR make |x^{-s} y^{-t}| explode as the contours drift up, and
  // the quadrature then loses the (tiny) value to cancellation.
  const double cs = 0.75 * std::max(-1.0, -comp.shape / comp.rho);
  h.contour_s = cs;
  h.contour_t =
      std::max({1.0 + cs, 1.0 - rf.k_w, 1.0 - rf.m_w}) + 0.25;
  h.quad_tolerance = quad_tolerance;
  h.abs_floor = 1e-16;
  return h;
}

inline double af_component_prefactor(const RfLinkFit& rf,
                                     const MixtureComponent& comp, double r) {
  // weight * r * xi / (Gamma(k_w) Gamma(m_w)), with the GG component's extra
  // 1 / (Gamma(a) * c) absorbed via weight * rho = weight * r / c.
  const double shape_norm =
      (comp.shape == 1.0) ? 1.0 : std::tgamma(comp.shape) * (r / comp.rho);
  return comp.weight * r * rf.xi /
         (std::exp(std::lgamma(rf.k_w) + std::lgamma(rf.m_w)) * shape_norm);
}

}  // namespace detail

// Distribution function of the fixed-gain AF end-to-end SNR.
inline double af_cdf(const RfLinkFit& rf, const EggParams& uw,
                     const RelayConfig& relay, double gamma,
                     EvalDiag* diag = nullptr) {
  if (relay.protocol != Protocol::fixed_gain_af)
    throw std::invalid_argument("af_cdf: relay protocol must be fixed-gain AF");
  if (!(gamma > 0.0)) throw std::domain_error("af_cdf: gamma must be > 0");
  const double r = static_cast<double>(uw.r);
  const double C = relay.gain_const;
  double value = snr1_cdf(rf, gamma, diag);
  for (const auto& comp : detail::components(uw)) {
    HCoeffs h = detail::af_coupling_coeffs(rf, comp, 1e-6);
    const double pref =
        detail::af_component_prefactor(rf, comp, r) * gamma;
    value += pref * fox_h_bivariate(h, C * comp.scale, rf.xi * gamma, diag);
  }
  if (value < 0.0 && value > -1e-5) value = 0.0;
  if (value > 1.0 && value < 1.0 + 1e-5) value = 1.0;
  if (value < 0.0 || value > 1.0)
    throw convergence_error("af_cdf: value escaped [0,1] beyond tolerance");
  return value;
}

// Density of the fixed-gain AF end-to-end SNR: the first-hop density plus
// the derivative of the coupling integral (an extra Gamma(2-t)/Gamma(1-t)
// factor, i.e. the 1 - t brought down by differentiating gamma^{1-t}).
inline double af_pdf(const RfLinkFit& rf, const EggParams& uw,
                     const RelayConfig& relay, double gamma,
                     EvalDiag* diag = nullptr) {
  if (relay.protocol != Protocol::fixed_gain_af)
    throw std::invalid_argument("af_pdf: relay protocol must be fixed-gain AF");
  if (!(gamma > 0.0)) throw std::domain_error("af_pdf: gamma must be > 0");
  const double r = static_cast<double>(uw.r);
  const double C = relay.gain_const;
  double value = snr1_pdf(rf, gamma);
  for (const auto& comp : detail::components(uw)) {
    HCoeffs h = detail::af_coupling_coeffs(rf, comp, 1e-6);
    h.t_terms.push_back(num(2.0, -1.0));
    h.t_terms.push_back(den(1.0, -1.0));
    // Density tails below any usable resolution are accepted as zero rather
    // than resolved through heavy cancellation.
    h.abs_floor = 1e-12;
    const double pref = detail::af_component_prefactor(rf, comp, r);
    value += pref * fox_h_bivariate(h, C * comp.scale, rf.xi * gamma, diag);
  }
  return value;
}

// Distribution function of the decode-and-forward end-to-end SNR.
inline double df_cdf(const RfLinkFit& rf, const EggParams& uw, double gamma,
                     EvalDiag* diag = nullptr) {
  if (gamma < 0.0) throw std::domain_error("df_cdf: gamma must be >= 0");
  if (gamma == 0.0) return 0.0;
  const double f1 = snr1_cdf(rf, gamma, diag);
  const double f2 = snr2_cdf(uw, gamma, diag);
  return f1 + f2 - f1 * f2;
}

// Density of the decode-and-forward end-to-end SNR.
inline double df_pdf(const RfLinkFit& rf, const EggParams& uw, double gamma,
                     EvalDiag* diag = nullptr) {
  if (!(gamma > 0.0)) throw std::domain_error("df_pdf: gamma must be > 0");
  const double f1 = snr1_cdf(rf, gamma, diag);
  const double f2 = snr2_cdf(uw, gamma, diag);
  const double p1 = snr1_pdf(rf, gamma);
  const double p2 = snr2_pdf(uw, gamma, diag);
  return p1 + p2 - p1 * f2 - p2 * f1;
}

}  // namespace riswoc
