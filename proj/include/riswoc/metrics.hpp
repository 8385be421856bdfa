#pragma once

// Exact and asymptotic outage probability, average bit-error rate, and
// average channel capacity for both relaying protocols, plus diversity
// orders.

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "riswoc/e2e.hpp"
#include "riswoc/gamma.hpp"
#include "riswoc/rf_link.hpp"
#include "riswoc/specfn.hpp"
#include "riswoc/uwoc_link.hpp"

namespace riswoc {

enum class Method { exact, asymptotic, monte_carlo };

struct MetricResult {
  double value = 0.0;
  Method method = Method::exact;
  bool converged = true;
  bool perturbed = false;           // asymptotic near-pole perturbation hit
  std::optional<double> mc_std_err; // present iff method == monte_carlo
};

// Capacity prefactor: tau = 1 for heterodyne, e/(2*pi) for IM/DD (where the
// closed form is a lower bound on the true average capacity).
inline double capacity_tau(Detection det) {
  return det == Detection::hd ? 1.0 : std::numbers::e / (2.0 * std::numbers::pi);
}

// ---------------------------------------------------------------------------
// Fixed-gain AF
// ---------------------------------------------------------------------------

inline MetricResult op_af(const RfLinkFit& rf, const EggParams& uw,
                          const RelayConfig& relay, double gamma_th) {
  EvalDiag diag;
  MetricResult res;
  res.value = af_cdf(rf, uw, relay, gamma_th, &diag);
  res.converged = diag.converged;
  return res;
}

// The seven elementary terms of the high-SNR AF outage expansion, in the
// order: cascade-hop leading term; optical 1/r term; two exponential-
// component pole terms; optical a*c/r term; two generalized-gamma pole
// terms. Exposed for the term-wise audit tests.
inline std::array<double, 7> op_af_asymptotic_terms(const RfLinkFit& rf,
                                                    const EggParams& uw,
                                                    const RelayConfig& relay,
                                                    double gamma_th,
                                                    bool* perturbed = nullptr) {
  const double r = static_cast<double>(uw.r);
  const double C = relay.gain_const;
  bool pert = false;
  auto G = [&pert](double x) {
    bool p1 = false;
    const double xs = perturb_near_pole(x, &p1);
    pert = pert || p1;
    return gamma_real(xs);
  };
  const double kw = rf.k_w, mw = rf.m_w, t = rf.t_min;
  const double D = std::exp(std::lgamma(kw) + std::lgamma(mw));
  const double om = uw.omega, a = uw.a, c = uw.c;
  const double x1 = C * rf.xi * gamma_th / (std::pow(uw.lambda, r) * uw.mu_r);
  const double x2 = C * rf.xi * gamma_th / (std::pow(uw.b, r) * uw.mu_r);
  std::array<double, 7> terms{};
  terms[0] = G(std::fabs(mw - kw)) / (D * t) * std::pow(rf.xi * gamma_th, t);
  terms[1] = om * G(kw - 1.0 / r) * G(mw - 1.0 / r) / D * std::pow(x1, 1.0 / r);
  terms[2] = om * r * G(1.0 - kw * r) * G(mw - kw) * G(kw * r) /
             (D * G(1.0 + kw * r)) * std::pow(x1, kw);
  terms[3] = om * r * G(1.0 - mw * r) * G(kw - mw) * G(mw * r) /
             (D * G(1.0 + mw * r)) * std::pow(x1, mw);
  terms[4] = (1.0 - om) * G(kw - a * c / r) * G(mw - a * c / r) /
             (D * G(1.0 + a)) * std::pow(x2, a * c / r);
  terms[5] = (1.0 - om) * G(a - kw * r / c) * G(mw - kw) * G(kw * r / c) * r /
             (D * G(a) * G(1.0 + kw * r / c) * c) * std::pow(x2, kw);
  terms[6] = (1.0 - om) * G(a - mw * r / c) * G(kw - mw) * G(mw * r / c) * r /
             (D * G(a) * G(1.0 + mw * r / c) * c) * std::pow(x2, mw);
  if (perturbed) *perturbed = pert;
  return terms;
}

// Exponents paired with op_af_asymptotic_terms (powers of gamma_th).
inline std::array<double, 7> op_af_asymptotic_exponents(const RfLinkFit& rf,
                                                        const EggParams& uw) {
  const double r = static_cast<double>(uw.r);
  return {rf.t_min,       1.0 / r, rf.k_w, rf.m_w,
          uw.a * uw.c / r, rf.k_w, rf.m_w};
}

inline MetricResult op_af_asymptotic(const RfLinkFit& rf, const EggParams& uw,
                                     const RelayConfig& relay,
                                     double gamma_th) {
  MetricResult res;
  res.method = Method::asymptotic;
  const auto terms = op_af_asymptotic_terms(rf, uw, relay, gamma_th,
                                            &res.perturbed);
  for (double t : terms) res.value += t;
  return res;
}

inline double diversity_order(const RfLinkFit& rf, const EggParams& uw,
                              Protocol protocol) {
  const double r = static_cast<double>(uw.r);
  const double scale = (protocol == Protocol::fixed_gain_af) ? 2.0 : 1.0;
  return std::min({rf.m_w, rf.k_w, scale / r, scale * uw.a * uw.c / r});
}

// Average bit-error rate of the first hop alone.
inline double rf_aber(const RfLinkFit& rf, const ModulationParams& mod,
                      EvalDiag* diag = nullptr) {
  HCoeffs h;
  h.s_terms = {num(rf.k_w, 1.0), num(rf.m_w, 1.0), num(0.0, -1.0),
               num(mod.p, -1.0), den(1.0, -1.0)};
  h.contour_s = -0.5 * std::min({rf.k_w, rf.m_w, mod.p, 1.0});
  return fox_h(h, rf.xi / mod.q, diag) /
         (2.0 * std::tgamma(mod.p) *
          std::exp(std::lgamma(rf.k_w) + std::lgamma(rf.m_w)));
}

inline double rf_aber_asymptotic(const RfLinkFit& rf,
                                 const ModulationParams& mod,
                                 bool* perturbed = nullptr) {
  const double diff = perturb_near_pole(rf.k_w - rf.m_w, perturbed);
  const double t = rf.t_min;
  return std::exp(std::lgamma(std::fabs(diff)) + std::lgamma(mod.p + t) -
                  std::lgamma(mod.p) - std::lgamma(rf.k_w) -
                  std::lgamma(rf.m_w)) /
         (2.0 * t) * std::pow(rf.xi / mod.q, t);
}

inline MetricResult aber_af(const RfLinkFit& rf, const EggParams& uw,
                            const RelayConfig& relay,
                            const ModulationParams& mod) {
  if (relay.protocol != Protocol::fixed_gain_af)
    throw std::invalid_argument("aber_af: relay protocol must be fixed-gain AF");
  const double r = static_cast<double>(uw.r);
  EvalDiag diag;
  MetricResult res;
  double value = rf_aber(rf, mod, &diag);
  bool converged = diag.converged;
  for (const auto& comp : detail::components(uw)) {
    HCoeffs h = detail::af_coupling_coeffs(rf, comp, 1e-6);
    h.t_terms.push_back(num(mod.p + 1.0, -1.0));
    // The extra numerator gamma caps the t-abscissa at 1 + p from above.
    const double lo_t =
        std::max({1.0 + *h.contour_s, 1.0 - rf.k_w, 1.0 - rf.m_w});
    h.contour_t = std::min(lo_t + 0.25, 0.5 * (lo_t + 1.0 + mod.p));
    const double pref = detail::af_component_prefactor(rf, comp, r) /
                        (2.0 * mod.q * std::tgamma(mod.p));
    value += pref * fox_h_bivariate(h, relay.gain_const * comp.scale,
                                    rf.xi / mod.q, &diag);
    converged = converged && diag.converged;
  }
  res.value = value;
  res.converged = converged;
  return res;
}

inline MetricResult aber_af_asymptotic(const RfLinkFit& rf,
                                       const EggParams& uw,
                                       const RelayConfig& relay,
                                       const ModulationParams& mod) {
  MetricResult res;
  res.method = Method::asymptotic;
  const auto terms =
      op_af_asymptotic_terms(rf, uw, relay, 1.0, &res.perturbed);
  const auto exps = op_af_asymptotic_exponents(rf, uw);
  const double lg_p = std::lgamma(mod.p);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    res.value += terms[i] * std::exp(std::lgamma(mod.p + exps[i]) - lg_p) /
                 (2.0 * std::pow(mod.q, exps[i]));
  }
  return res;
}

inline MetricResult acc_af(const RfLinkFit& rf, const EggParams& uw,
                           const RelayConfig& relay, Detection det) {
  if (relay.protocol != Protocol::fixed_gain_af)
    throw std::invalid_argument("acc_af: relay protocol must be fixed-gain AF");
  const double tau = capacity_tau(det);
  const double ln2 = std::numbers::ln2;
  EvalDiag diag;
  MetricResult res;
  double value = 0.0;
  bool converged = true;
  for (const auto& comp : detail::components(uw)) {
    HCoeffs h;
    h.joint_terms = {num2(-1.0, -1.0, 1.0)};
    h.s_terms = {num(comp.shape, comp.rho), num(0.0, 1.0)};
    h.t_terms = {num(rf.k_w - 1.0, 1.0), num(rf.m_w - 1.0, 1.0),
                 num(-1.0, 1.0), num(2.0, -1.0), den(0.0, 1.0)};
    const double cs = 0.4;
    h.contour_s = cs;
    h.contour_t = 1.0 + cs + 0.5 * (1.0 - cs);
    h.quad_tolerance = 1e-6;
    const double pref = comp.weight * rf.xi /
                        (std::exp(std::lgamma(rf.k_w) + std::lgamma(rf.m_w)) *
                         std::tgamma(comp.shape) * 2.0 * ln2 * tau);
    value += pref * fox_h_bivariate(h, relay.gain_const * comp.scale,
                                    rf.xi / tau, &diag);
    converged = converged && diag.converged;
  }
  res.value = value;
  res.converged = converged;
  return res;
}

// ---------------------------------------------------------------------------
// Decode-and-forward
// ---------------------------------------------------------------------------

inline MetricResult op_df(const RfLinkFit& rf, const EggParams& uw,
                          double gamma_th) {
  EvalDiag diag;
  MetricResult res;
  res.value = df_cdf(rf, uw, gamma_th, &diag);
  res.converged = diag.converged;
  return res;
}

inline MetricResult op_df_asymptotic(const RfLinkFit& rf, const EggParams& uw,
                                     double gamma_th) {
  MetricResult res;
  res.method = Method::asymptotic;
  res.value = snr1_cdf_asymptotic(rf, gamma_th, &res.perturbed) +
              snr2_cdf_asymptotic(uw, gamma_th);
  return res;
}

inline MetricResult aber_df(const RfLinkFit& rf, const EggParams& uw,
                            const ModulationParams& mod) {
  EvalDiag diag;
  MetricResult res;
  const double pe1 = rf_aber(rf, mod, &diag);
  bool converged = diag.converged;
  const double pe2 = uwoc_aber(uw, mod, &diag);
  converged = converged && diag.converged;
  res.value = pe1 + pe2 - 2.0 * pe1 * pe2;
  res.converged = converged;
  return res;
}

inline MetricResult aber_df_asymptotic(const RfLinkFit& rf,
                                       const EggParams& uw,
                                       const ModulationParams& mod) {
  MetricResult res;
  res.method = Method::asymptotic;
  res.value = rf_aber_asymptotic(rf, mod, &res.perturbed) +
              uwoc_aber_asymptotic(uw, mod);
  return res;
}

inline MetricResult acc_df(const RfLinkFit& rf, const EggParams& uw,
                           Detection det) {
  const double tau = capacity_tau(det);
  const double ln2 = std::numbers::ln2;
  const double lg_km = std::lgamma(rf.k_w) + std::lgamma(rf.m_w);
  EvalDiag diag;
  bool converged = true;

  // First-hop capacity term.
  HCoeffs h1;
  h1.s_terms = {num(rf.k_w - 1.0, 1.0), num(rf.m_w - 1.0, 1.0),
                num(-1.0, 1.0), num(-1.0, 1.0), num(2.0, -1.0),
                den(0.0, 1.0)};
  h1.contour_s = 1.5;
  const double ic1 = rf.xi / (std::exp(lg_km) * 2.0 * ln2 * tau) *
                     fox_h(h1, rf.xi / tau, &diag);
  converged = converged && diag.converged;

  // Second-hop capacity term (two mixture components).
  double ic2 = 0.0;
  for (const auto& comp : detail::components(uw)) {
    HCoeffs h;
    h.s_terms = {num(comp.shape, comp.rho), num(0.0, 1.0), num(0.0, 1.0),
                 num(1.0, -1.0), den(1.0, 1.0)};
    h.contour_s = 0.5;
    ic2 += comp.weight / (std::tgamma(comp.shape) * 2.0 * ln2) *
           fox_h(h, comp.scale / tau, &diag);
    converged = converged && diag.converged;
  }

  // Cross terms: first-hop density against the second-hop CDF and vice
  // versa.
  double ic3 = 0.0;
  for (const auto& comp : detail::components(uw)) {
    HCoeffs h;
    h.s_terms = {num(rf.k_w - 1.0, 1.0), num(rf.m_w - 1.0, 1.0)};
    h.t_terms = {num(comp.shape, comp.rho), num(0.0, -comp.rho),
                 den(1.0, -comp.rho)};
    h.joint_terms = {num2(-1.0, 1.0, 1.0), num2(-1.0, 1.0, 1.0),
                     num2(2.0, -1.0, -1.0), den2(0.0, 1.0, 1.0)};
    const double cu = -0.5 * std::min(1.0, comp.shape / comp.rho);
    h.contour_t = cu;
    h.contour_s = 1.5 - cu;
    h.quad_tolerance = 1e-6;
    const double pref = comp.weight * comp.rho * rf.xi /
                        (std::tgamma(comp.shape) * 2.0 * ln2 * tau *
                         std::exp(lg_km));
    ic3 += pref *
           fox_h_bivariate(h, rf.xi / tau, comp.scale / tau, &diag);
    converged = converged && diag.converged;
  }

  double ic4 = 0.0;
  for (const auto& comp : detail::components(uw)) {
    HCoeffs h;
    h.s_terms = {num(comp.shape, comp.rho)};
    h.t_terms = {num(rf.k_w, 1.0), num(rf.m_w, 1.0), num(0.0, -1.0),
                 den(1.0, -1.0)};
    h.joint_terms = {num2(0.0, 1.0, 1.0), num2(0.0, 1.0, 1.0),
                     num2(1.0, -1.0, -1.0), den2(1.0, 1.0, 1.0)};
    h.contour_s = 0.5;
    h.contour_t = -0.25 * std::min(1.0, rf.m_w);
    h.quad_tolerance = 1e-6;
    const double pref = comp.weight /
                        (std::tgamma(comp.shape) * 2.0 * ln2 * std::exp(lg_km));
    ic4 += pref *
           fox_h_bivariate(h, comp.scale / tau, rf.xi / tau, &diag);
    converged = converged && diag.converged;
  }

  MetricResult res;
  res.value = ic1 + ic2 - ic3 - ic4;
  res.converged = converged;
  return res;
}

}  // namespace riswoc
