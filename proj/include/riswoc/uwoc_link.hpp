#pragma once

// Second hop: underwater optical channel whose irradiance follows an
// Exponential + Generalized-Gamma mixture. Embeds the measured parameter
// tables, maps mean SNR to the electrical SNR for both detection modes, and
// provides the SNR PDF/CDF (Mellin-Barnes and closed forms), the high-SNR
// CDF, and the stand-alone optical-hop bit-error rate.

#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "riswoc/gamma.hpp"
#include "riswoc/specfn.hpp"

namespace riswoc {

enum class Water { thermal, salty, fresh };
enum class Detection { hd = 1, imdd = 2 };

struct ModulationParams {
  double p = 0.5;
  double q = 1.0;  // defaults: BPSK
};

struct EggParams {
  double omega = 0.0;   // mixture weight of the exponential component
  double lambda = 0.0;  // exponential scale
  double a = 0.0, b = 0.0, c = 0.0;  // generalized-gamma shape/scale/power
  int r = 1;            // 1 = heterodyne, 2 = IM/DD
  double mean_snr = 1.0;
  double mu_r = 1.0;    // electrical SNR
};

struct EggTableRow {
  Water water;
  double bubble_level;
  std::optional<double> temp_gradient;  // deg C per cm; thermal rows only
  double omega, lambda, a, b, c;
};

inline const std::vector<EggTableRow>& egg_table() {
  static const std::vector<EggTableRow> rows = {
      {Water::thermal, 2.4, 0.05, 0.2130, 0.3291, 1.4299, 1.1817, 17.1984},
      {Water::thermal, 2.4, 0.20, 0.1665, 0.1207, 0.1559, 1.5216, 22.8754},
      {Water::thermal, 4.7, 0.05, 0.4580, 0.3449, 1.0421, 1.5768, 35.9424},
      {Water::salty, 4.7, std::nullopt, 0.2064, 0.3953, 0.5307, 1.2154,
       35.7368},
      {Water::salty, 7.1, std::nullopt, 0.4344, 0.4747, 0.3935, 1.4506,
       77.0245},
      {Water::salty, 16.5, std::nullopt, 0.4951, 0.1368, 0.0161, 3.2033,
       82.1030},
      {Water::fresh, 4.7, std::nullopt, 0.2190, 0.4603, 1.2526, 1.1501,
       41.3258},
      {Water::fresh, 7.1, std::nullopt, 0.3489, 0.4771, 0.4319, 1.4531,
       74.3650},
      {Water::fresh, 16.5, std::nullopt, 0.5117, 0.1602, 0.0075, 2.9963,
       216.8356},
  };
  return rows;
}

inline const char* water_name(Water w) {
  switch (w) {
    case Water::thermal: return "thermal";
    case Water::salty: return "salty";
    case Water::fresh: return "fresh";
  }
  return "?";
}

inline EggTableRow table_lookup(Water water, double bubble_level,
                                std::optional<double> temp_gradient = {}) {
  for (const auto& row : egg_table()) {
    if (row.water != water) continue;
    if (std::fabs(row.bubble_level - bubble_level) > 1e-9) continue;
    if (row.temp_gradient.has_value() != temp_gradient.has_value()) {
      if (water == Water::thermal) continue;  // thermal rows need a gradient
    }
    if (row.temp_gradient && temp_gradient &&
        std::fabs(*row.temp_gradient - *temp_gradient) > 1e-9)
      continue;
    return row;
  }
  std::ostringstream msg;
  msg << "unknown water condition; available rows:";
  for (const auto& row : egg_table()) {
    msg << " (" << water_name(row.water) << ", " << row.bubble_level;
    if (row.temp_gradient) msg << ", " << *row.temp_gradient;
    msg << ")";
  }
  throw std::invalid_argument(msg.str());
}

// Electrical SNR for the requested detection mode.
inline double electrical_snr(double mean_snr, double omega, double lambda,
                             double a, double b, double c, Detection det) {
  if (det == Detection::hd) return mean_snr;
  const double gg_second_moment =
      b * b * (1.0 - omega) * std::exp(std::lgamma(a + 2.0 / c) - std::lgamma(a));
  const double denom = 2.0 * omega * lambda * lambda + gg_second_moment;
  if (!(denom > 0.0))
    throw std::runtime_error("electrical_snr: nonpositive second moment");
  return mean_snr / denom;
}

inline EggParams make_egg(const EggTableRow& row, Detection det,
                          double mean_snr) {
  EggParams p;
  p.omega = row.omega;
  p.lambda = row.lambda;
  p.a = row.a;
  p.b = row.b;
  p.c = row.c;
  p.r = static_cast<int>(det);
  p.mean_snr = mean_snr;
  p.mu_r = electrical_snr(mean_snr, row.omega, row.lambda, row.a, row.b, row.c,
                          det);
  return p;
}

inline EggParams make_egg_custom(double omega, double lambda, double a,
                                 double b, double c, Detection det,
                                 double mean_snr) {
  EggTableRow row{Water::fresh, 0.0, std::nullopt, omega, lambda, a, b, c};
  return make_egg(row, det, mean_snr);
}

namespace detail {

// The mixture splits every second-hop statistic into an exponential piece
// and a generalized-gamma piece; both reduce to the same one-gamma kernel
// with (weight, mellin slope, shape offset, argument scale).
struct MixtureComponent {
  double weight;  // omega or 1 - omega
  double rho;     // r for the exponential piece, r/c for the GG piece
  double shape;   // 1 for the exponential piece, a for the GG piece
  double scale;   // 1/(lambda^r mu_r) or 1/(b^r mu_r)
};

inline std::array<MixtureComponent, 2> components(const EggParams& p) {
  const double r = static_cast<double>(p.r);
  return {MixtureComponent{p.omega, r, 1.0,
                           1.0 / (std::pow(p.lambda, r) * p.mu_r)},
          MixtureComponent{1.0 - p.omega, r / p.c, p.a,
                           1.0 / (std::pow(p.b, r) * p.mu_r)}};
}

}  // namespace detail

// SNR density of the optical hop (Mellin-Barnes form of the two-term
// mixture).
inline double snr2_pdf(const EggParams& p, double gamma2,
                       EvalDiag* diag = nullptr) {
  if (!(gamma2 > 0.0)) throw std::domain_error("snr2_pdf: gamma2 must be > 0");
  double value = 0.0;
  for (const auto& comp : detail::components(p)) {
    const double x = gamma2 * comp.scale;
    const double t = std::log(x) / comp.rho;
    // The component equals (1/rho) x^{shape/rho} exp(-x^{1/rho}); skip it
    // outright where either factor underflows, instead of chasing an
    // exponentially small Mellin-Barnes integral.
    if (t > 6.5 || comp.shape * t < -700.0) continue;
    HCoeffs h;
    h.s_terms = {num(comp.shape, comp.rho)};
    // Place the contour at the saddle of Gamma(shape + rho*s) x^{-s}, i.e.
    // where digamma(u) = log(x)/rho, so the integrand scale tracks the
    // (possibly exponentially small) value. Two-branch inverse-digamma
    // approximation.
    const double saddle =
        t >= -2.22 ? std::exp(t) + 0.5 : -1.0 / (t + 0.5772156649015329);
    h.contour_s = (saddle - comp.shape) / comp.rho;
    h.abs_floor = 1e-16;
    value += comp.weight / std::tgamma(comp.shape) / gamma2 *
             fox_h(h, x, diag);
  }
  return value;
}

// SNR distribution function (Mellin-Barnes form); the closed form below is
// the independent cross-check used by tests and the Monte-Carlo oracle.
inline double snr2_cdf(const EggParams& p, double gamma2,
                       EvalDiag* diag = nullptr) {
  if (gamma2 < 0.0) throw std::domain_error("snr2_cdf: gamma2 must be >= 0");
  if (gamma2 == 0.0) return 0.0;
  double value = 0.0;
  for (const auto& comp : detail::components(p)) {
    HCoeffs h;
    h.s_terms = {num(comp.shape, comp.rho), num(0.0, -comp.rho),
                 den(1.0, -comp.rho)};
    h.contour_s = -0.5 * std::min(1.0, comp.shape / comp.rho);
    value += comp.weight * comp.rho / std::tgamma(comp.shape) *
             fox_h(h, gamma2 * comp.scale, diag);
  }
  return value;
}

inline double snr2_cdf_closed(const EggParams& p, double gamma2) {
  if (gamma2 <= 0.0) return 0.0;
  const double r = static_cast<double>(p.r);
  const double exp_arg =
      std::pow(gamma2 / (std::pow(p.lambda, r) * p.mu_r), 1.0 / r);
  const double gg_arg =
      std::pow(gamma2 / (std::pow(p.b, r) * p.mu_r), p.c / r);
  return p.omega * (1.0 - std::exp(-exp_arg)) +
         (1.0 - p.omega) * gamma_p(p.a, gg_arg);
}

// Leading high-SNR behavior of the optical-hop CDF.
inline double snr2_cdf_asymptotic(const EggParams& p, double gamma2) {
  if (!(gamma2 > 0.0))
    throw std::domain_error("snr2_cdf_asymptotic: gamma2 must be > 0");
  const double r = static_cast<double>(p.r);
  return p.omega *
             std::pow(gamma2 / (std::pow(p.lambda, r) * p.mu_r), 1.0 / r) +
         (1.0 - p.omega) / std::tgamma(p.a + 1.0) *
             std::pow(gamma2 / (std::pow(p.b, r) * p.mu_r), p.a * p.c / r);
}

// Average bit-error rate of the optical hop alone, for the conditional
// error kernel Gamma(p, q*gamma) / (2 Gamma(p)).
inline double uwoc_aber(const EggParams& p, const ModulationParams& mod,
                        EvalDiag* diag = nullptr) {
  if (!(mod.p > 0.0) || !(mod.q > 0.0))
    throw std::domain_error("uwoc_aber: modulation parameters must be > 0");
  double value = 0.0;
  for (const auto& comp : detail::components(p)) {
    HCoeffs h;
    h.s_terms = {num(comp.shape, comp.rho), num(0.0, -comp.rho),
                 num(mod.p, -1.0), den(1.0, -comp.rho)};
    h.contour_s = -0.4 * std::min(1.0, comp.shape / comp.rho);
    h.truncation = 400.0;
    value += comp.weight * comp.rho /
             (2.0 * std::tgamma(mod.p) * std::tgamma(comp.shape)) *
             fox_h(h, comp.scale / mod.q, diag);
  }
  return value;
}

inline double uwoc_aber_asymptotic(const EggParams& p,
                                   const ModulationParams& mod) {
  const double r = static_cast<double>(p.r);
  const double lg_p = std::lgamma(mod.p);
  const double e1 = 1.0 / r;
  const double e2 = p.a * p.c / r;
  return p.omega * std::exp(std::lgamma(mod.p + e1) - lg_p) / 2.0 *
             std::pow(1.0 / (mod.q * std::pow(p.lambda, r) * p.mu_r), e1) +
         (1.0 - p.omega) *
             std::exp(std::lgamma(mod.p + e2) - lg_p - std::lgamma(p.a + 1.0)) /
             2.0 * std::pow(1.0 / (mod.q * std::pow(p.b, r) * p.mu_r), e2);
}

}  // namespace riswoc
