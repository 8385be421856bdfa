#pragma once

// Monte-Carlo channel oracle. Draws the physical fading factors directly
// (Nakagami-m and Rayleigh amplitudes for the reflective cascade, the
// Exponential + Generalized-Gamma mixture for the optical irradiance) and
// estimates each metric from the simulated end-to-end SNR, independently of
// every analytical expression in the library.
//
// The raw draws are SNR-scale-free: the cascade sample stores the squared
// amplitude sum and the optical sample stores the irradiance, so one batch
// of samples serves every point of a mean-SNR sweep.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "riswoc/e2e.hpp"
#include "riswoc/gamma.hpp"
#include "riswoc/metrics.hpp"
#include "riswoc/rf_link.hpp"
#include "riswoc/uwoc_link.hpp"

namespace riswoc {

struct McConfig {
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
  std::size_t batch = 1u << 16;  // deterministic per-batch substreams
};

namespace detail {

// splitmix64: decorrelates per-batch seeds derived from (seed, batch index).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace detail

struct McSamples {
  // Squared amplitude-sum of the cascade (times mean SNR gives gamma1); for
  // the no-reflector baseline (n == 0) these are unit-mean exponentials.
  std::vector<double> z2;
  // Optical irradiance (mu_r * I^r gives gamma2).
  std::vector<double> intensity;
};

inline McSamples draw_samples(const RfLinkParams& rf, const EggParams& uw,
                              const McConfig& cfg) {
  if (rf.n < 0) throw std::domain_error("draw_samples: n must be >= 0");
  if (rf.n > 0 && rf.m < 0.5)
    throw std::domain_error("draw_samples: m must be >= 0.5");
  McSamples out;
  out.z2.resize(cfg.samples);
  out.intensity.resize(cfg.samples);
  const std::size_t batch = std::max<std::size_t>(cfg.batch, 1);
  const std::size_t n_batches = (cfg.samples + batch - 1) / batch;
  for (std::size_t bi = 0; bi < n_batches; ++bi) {
    std::mt19937_64 rng(detail::splitmix64(cfg.seed + 0x2545f4914f6cdd1dull * bi));
    std::gamma_distribution<double> nakagami_pow(rf.m, 1.0 / rf.m);
    std::exponential_distribution<double> unit_exp(1.0);
    std::gamma_distribution<double> gg_core(uw.a, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t lo = bi * batch;
    const std::size_t hi = std::min(lo + batch, cfg.samples);
    for (std::size_t i = lo; i < hi; ++i) {
      if (rf.n == 0) {
        out.z2[i] = unit_exp(rng);
      } else {
        double z = 0.0;
        for (int e = 0; e < rf.n; ++e) {
          const double alpha = std::sqrt(nakagami_pow(rng));
          const double beta = std::sqrt(unit_exp(rng));
          z += alpha * beta;
        }
        out.z2[i] = z * z;
      }
      if (unif(rng) < uw.omega) {
        out.intensity[i] = uw.lambda * unit_exp(rng);
      } else {
        out.intensity[i] = uw.b * std::pow(gg_core(rng), 1.0 / uw.c);
      }
    }
  }
  return out;
}

enum class MetricKind { op, aber, acc };

// Estimates one metric at one operating point from pre-drawn samples.
// gamma1 = mean_snr1 * z2, gamma2 = mu_r * intensity^r; the end-to-end SNR
// follows the selected relaying rule.
inline MetricResult estimate_metric(const McSamples& samples, MetricKind kind,
                                    const RelayConfig& relay, double mean_snr1,
                                    const EggParams& uw, double gamma_th,
                                    const ModulationParams& mod,
                                    Detection det) {
  if (samples.z2.empty() || samples.z2.size() != samples.intensity.size())
    throw std::invalid_argument("estimate_metric: bad sample set");
  const double r = static_cast<double>(uw.r);
  const double tau = capacity_tau(det);
  const double inv_log4 = 1.0 / (2.0 * std::numbers::ln2);
  double sum = 0.0, sum_sq = 0.0;
  const std::size_t n = samples.z2.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double g1 = mean_snr1 * samples.z2[i];
    const double g2 = uw.mu_r * std::pow(samples.intensity[i], r);
    const double g = (relay.protocol == Protocol::fixed_gain_af)
                         ? g1 * g2 / (g2 + relay.gain_const)
                         : std::min(g1, g2);
    // Gamma(1/2, x)/Gamma(1/2) = erfc(sqrt(x)); cheaper than the generic
    // continued fraction on hot loops.
    auto kernel = [&](double snr) {
      return mod.p == 0.5 ? 0.5 * std::erfc(std::sqrt(mod.q * snr))
                          : 0.5 * gamma_q(mod.p, mod.q * snr);
    };
    double x = 0.0;
    switch (kind) {
      case MetricKind::op:
        x = (g < gamma_th) ? 1.0 : 0.0;
        break;
      case MetricKind::aber:
        if (relay.protocol == Protocol::fixed_gain_af) {
          x = kernel(g);
        } else {
          // Decode-and-forward re-encodes at the relay: the end-to-end bit
          // is wrong iff exactly one hop decides wrongly.
          const double q1 = kernel(g1);
          const double q2 = kernel(g2);
          x = q1 + q2 - 2.0 * q1 * q2;
        }
        break;
      case MetricKind::acc:
        x = inv_log4 * std::log1p(tau * g);
        break;
    }
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / static_cast<double>(n);
  const double var =
      std::max(0.0, sum_sq / static_cast<double>(n) - mean * mean);
  MetricResult res;
  res.method = Method::monte_carlo;
  res.value = mean;
  res.mc_std_err = std::sqrt(var / static_cast<double>(n));
  return res;
}

}  // namespace riswoc
