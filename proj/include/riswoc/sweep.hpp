#pragma once

// Configuration-driven sweep runner. Parses a flat key=value spec file,
// evaluates the requested metric with any subset of {exact, asymptotic, mc}
// over a dB grid of mean SNRs, and renders the result table as CSV or JSON.
//
// All dB <-> linear conversion happens here; the library below this layer is
// strictly linear-scale.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "riswoc/e2e.hpp"
#include "riswoc/mc.hpp"
#include "riswoc/metrics.hpp"
#include "riswoc/quadrature.hpp"
#include "riswoc/rf_link.hpp"
#include "riswoc/uwoc_link.hpp"

namespace riswoc {

struct spec_error : std::runtime_error {
  explicit spec_error(const std::string& field, const std::string& what)
      : std::runtime_error("spec field '" + field + "': " + what) {}
};

enum class SnrAxis { joint, rf_only };

struct SweepSpec {
  MetricKind metric = MetricKind::op;
  Protocol protocol = Protocol::fixed_gain_af;
  Detection detection = Detection::hd;
  int n = 2;          // reflecting elements; 0 selects the no-reflector
                      // baseline (gamma_1 exponential)
  double m = 2.0;
  // Water selector: either a table row ...
  std::optional<Water> water;
  double bubble_level = 0.0;
  std::optional<double> temp_gradient;
  // ... or explicit mixture parameters.
  std::optional<double> omega, lambda, a, b, c;
  double gain_const = 1.5;
  double gamma_th_db = 2.0;
  double mod_p = 0.5, mod_q = 1.0;
  SnrAxis snr_axis = SnrAxis::joint;
  double gamma2_db = 0.0;  // fixed second-hop mean SNR when snr_axis = rf
  std::vector<double> points_db;
  std::vector<Method> methods = {Method::exact};
  McConfig mc;
};

struct SweepRow {
  double snr_db = 0.0;
  Method method = Method::exact;
  double value = 0.0;
  std::optional<double> std_err;
  bool converged = true;
  std::string error;  // empty on success
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

inline double parse_double(const std::string& field, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw spec_error(field, "expected a number, got '" + v + "'");
  }
}

// Grid syntax: "start:stop:step" or a comma-separated list.
inline std::vector<double> parse_points(const std::string& v) {
  std::vector<double> pts;
  if (v.find(':') != std::string::npos) {
    const auto parts = split(v, ':');
    if (parts.size() != 3)
      throw spec_error("points_db", "range must be start:stop:step");
    const double start = parse_double("points_db", parts[0]);
    const double stop = parse_double("points_db", parts[1]);
    const double step = parse_double("points_db", parts[2]);
    if (!(step > 0.0)) throw spec_error("points_db", "step must be > 0");
    for (double x = start; x <= stop + 1e-9; x += step) pts.push_back(x);
  } else {
    for (const auto& tok : split(v, ',')) {
      if (!tok.empty()) pts.push_back(parse_double("points_db", tok));
    }
  }
  if (pts.empty()) throw spec_error("points_db", "empty grid");
  return pts;
}

}  // namespace detail

inline SweepSpec parse_spec(std::istream& in) {
  SweepSpec spec;
  spec.methods.clear();
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw spec_error("line " + std::to_string(lineno),
                       "expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw spec_error(key.empty() ? "line " + std::to_string(lineno) : key,
                       "empty key or value");
    if (!kv.emplace(key, val).second)
      throw spec_error(key, "duplicate key");
  }

  auto take = [&kv](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  if (auto v = take("metric")) {
    if (*v == "op") spec.metric = MetricKind::op;
    else if (*v == "aber") spec.metric = MetricKind::aber;
    else if (*v == "acc") spec.metric = MetricKind::acc;
    else throw spec_error("metric", "must be op, aber, or acc");
  } else {
    throw spec_error("metric", "required");
  }
  if (auto v = take("protocol")) {
    if (*v == "af") spec.protocol = Protocol::fixed_gain_af;
    else if (*v == "df") spec.protocol = Protocol::df;
    else throw spec_error("protocol", "must be af or df");
  } else {
    throw spec_error("protocol", "required");
  }
  if (auto v = take("detection")) {
    if (*v == "hd") spec.detection = Detection::hd;
    else if (*v == "imdd") spec.detection = Detection::imdd;
    else throw spec_error("detection", "must be hd or imdd");
  } else {
    throw spec_error("detection", "required");
  }
  if (auto v = take("n")) {
    spec.n = static_cast<int>(detail::parse_double("n", *v));
    if (spec.n < 0) throw spec_error("n", "must be >= 0");
  }
  if (auto v = take("m")) {
    spec.m = detail::parse_double("m", *v);
    if (spec.n > 0 && spec.m < 0.5) throw spec_error("m", "must be >= 0.5");
  }
  if (auto v = take("water")) {
    if (*v == "thermal") spec.water = Water::thermal;
    else if (*v == "salty") spec.water = Water::salty;
    else if (*v == "fresh") spec.water = Water::fresh;
    else throw spec_error("water", "must be thermal, salty, or fresh");
  }
  if (auto v = take("bubble_level"))
    spec.bubble_level = detail::parse_double("bubble_level", *v);
  if (auto v = take("temp_gradient"))
    spec.temp_gradient = detail::parse_double("temp_gradient", *v);
  for (auto* f : {"omega", "lambda", "a", "b", "c"}) {
    if (auto v = take(f)) {
      const double x = detail::parse_double(f, *v);
      if (std::string(f) == "omega") spec.omega = x;
      else if (std::string(f) == "lambda") spec.lambda = x;
      else if (std::string(f) == "a") spec.a = x;
      else if (std::string(f) == "b") spec.b = x;
      else spec.c = x;
    }
  }
  const bool custom = spec.omega || spec.lambda || spec.a || spec.b || spec.c;
  if (custom && spec.water)
    throw spec_error("water", "give either a table row or omega/lambda/a/b/c, not both");
  if (custom &&
      !(spec.omega && spec.lambda && spec.a && spec.b && spec.c))
    throw spec_error("omega", "custom mixture needs all of omega, lambda, a, b, c");
  if (!custom && !spec.water)
    throw spec_error("water", "required (or give omega/lambda/a/b/c)");

  if (auto v = take("gain_const"))
    spec.gain_const = detail::parse_double("gain_const", *v);
  if (auto v = take("gamma_th_db"))
    spec.gamma_th_db = detail::parse_double("gamma_th_db", *v);
  if (auto v = take("p")) spec.mod_p = detail::parse_double("p", *v);
  if (auto v = take("q")) spec.mod_q = detail::parse_double("q", *v);
  if (spec.mod_p <= 0.0 || spec.mod_q <= 0.0)
    throw spec_error("p", "modulation parameters must be > 0");
  if (auto v = take("snr_axis")) {
    if (*v == "joint") spec.snr_axis = SnrAxis::joint;
    else if (*v == "rf") spec.snr_axis = SnrAxis::rf_only;
    else throw spec_error("snr_axis", "must be joint or rf");
  }
  if (auto v = take("gamma2_db")) {
    spec.gamma2_db = detail::parse_double("gamma2_db", *v);
  } else if (spec.snr_axis == SnrAxis::rf_only) {
    throw spec_error("gamma2_db", "required when snr_axis = rf");
  }
  if (auto v = take("points_db")) {
    spec.points_db = detail::parse_points(*v);
  } else {
    throw spec_error("points_db", "required");
  }
  if (auto v = take("methods")) {
    for (const auto& tok : detail::split(*v, ',')) {
      if (tok == "exact") spec.methods.push_back(Method::exact);
      else if (tok == "asymptotic") spec.methods.push_back(Method::asymptotic);
      else if (tok == "mc") spec.methods.push_back(Method::monte_carlo);
      else throw spec_error("methods", "unknown method '" + tok + "'");
    }
  }
  if (spec.methods.empty()) spec.methods = {Method::exact};
  if (auto v = take("mc_samples")) {
    const double s = detail::parse_double("mc_samples", *v);
    if (s < 1) throw spec_error("mc_samples", "must be >= 1");
    spec.mc.samples = static_cast<std::size_t>(s);
  }
  if (auto v = take("mc_seed"))
    spec.mc.seed = static_cast<std::uint64_t>(
        std::stoull(*v));
  if (auto v = take("mc_batch"))
    spec.mc.batch = static_cast<std::size_t>(
        detail::parse_double("mc_batch", *v));

  if (!kv.empty()) throw spec_error(kv.begin()->first, "unknown key");
  return spec;
}

inline SweepSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw spec_error("spec-file", "cannot open '" + path + "'");
  return parse_spec(in);
}

inline std::string serialize_spec(const SweepSpec& s) {
  std::ostringstream out;
  out.precision(17);
  out << "metric = "
      << (s.metric == MetricKind::op
              ? "op"
              : s.metric == MetricKind::aber ? "aber" : "acc")
      << "\n";
  out << "protocol = "
      << (s.protocol == Protocol::fixed_gain_af ? "af" : "df") << "\n";
  out << "detection = " << (s.detection == Detection::hd ? "hd" : "imdd")
      << "\n";
  out << "n = " << s.n << "\nm = " << s.m << "\n";
  if (s.water) {
    out << "water = " << water_name(*s.water) << "\n";
    out << "bubble_level = " << s.bubble_level << "\n";
    if (s.temp_gradient) out << "temp_gradient = " << *s.temp_gradient << "\n";
  } else {
    out << "omega = " << *s.omega << "\nlambda = " << *s.lambda
        << "\na = " << *s.a << "\nb = " << *s.b << "\nc = " << *s.c << "\n";
  }
  out << "gain_const = " << s.gain_const << "\n";
  out << "gamma_th_db = " << s.gamma_th_db << "\n";
  out << "p = " << s.mod_p << "\nq = " << s.mod_q << "\n";
  out << "snr_axis = " << (s.snr_axis == SnrAxis::joint ? "joint" : "rf")
      << "\n";
  if (s.snr_axis == SnrAxis::rf_only) out << "gamma2_db = " << s.gamma2_db << "\n";
  out << "points_db = ";
  for (std::size_t i = 0; i < s.points_db.size(); ++i)
    out << (i ? "," : "") << s.points_db[i];
  out << "\nmethods = ";
  for (std::size_t i = 0; i < s.methods.size(); ++i)
    out << (i ? "," : "")
        << (s.methods[i] == Method::exact
                ? "exact"
                : s.methods[i] == Method::asymptotic ? "asymptotic" : "mc");
  out << "\nmc_samples = " << s.mc.samples << "\nmc_seed = " << s.mc.seed
      << "\nmc_batch = " << s.mc.batch << "\n";
  return out.str();
}

namespace detail {

// No-reflector baseline: gamma_1 is exponential with mean gamma_bar_1, so
// the end-to-end CDF reduces to one closed-form quadrature and the metrics
// to smooth 1-D integrals.
inline double baseline_e2e_cdf(double mean_snr1, const EggParams& uw,
                               const RelayConfig& relay, double gamma,
                               bool* converged) {
  if (gamma <= 0.0) return 0.0;
  const double f1 = -std::expm1(-gamma / mean_snr1);
  if (relay.protocol == Protocol::df) {
    const double f2 = snr2_cdf_closed(uw, gamma);
    return f1 + f2 - f1 * f2;
  }
  const double C = relay.gain_const;
  // F(gamma) = F1(gamma) + int_gamma^inf f1(g1) F2(C*gamma/(g1-gamma)) dg1,
  // substituted with g1 = gamma + u so the optical argument is C*gamma/u.
  bool conv = true;
  const double tail = integrate_to_inf(
      [&](double u) {
        return std::exp(-(gamma + u) / mean_snr1) / mean_snr1 *
               snr2_cdf_closed(uw, C * gamma / u);
      },
      0.0, 1e-12, 1e-9, &conv);
  if (converged) *converged = *converged && conv;
  return f1 + tail;
}

inline MetricResult baseline_exact(const SweepSpec& spec, double mean_snr1,
                                   const EggParams& uw) {
  const RelayConfig relay{spec.protocol, spec.gain_const};
  MetricResult res;
  bool conv = true;
  switch (spec.metric) {
    case MetricKind::op:
      res.value = baseline_e2e_cdf(mean_snr1, uw, relay,
                                   db_to_linear(spec.gamma_th_db), &conv);
      break;
    case MetricKind::aber: {
      // By-parts form with gamma = u^{1/p} flattening the endpoint.
      const double p = spec.mod_p, q = spec.mod_q;
      res.value = std::pow(q, p) / (2.0 * std::tgamma(p) * p) *
                  integrate_to_inf(
                      [&](double u) {
                        const double g = std::pow(u, 1.0 / p);
                        return std::exp(-q * g) *
                               baseline_e2e_cdf(mean_snr1, uw, relay, g, &conv);
                      },
                      0.0, 1e-14, 1e-8, &conv);
      break;
    }
    case MetricKind::acc: {
      const double tau = capacity_tau(spec.detection);
      res.value = 1.0 / (2.0 * std::numbers::ln2) *
                  integrate_to_inf(
                      [&](double g) {
                        return tau / (1.0 + tau * g) *
                               (1.0 - baseline_e2e_cdf(mean_snr1, uw, relay, g,
                                                       &conv));
                      },
                      0.0, 1e-14, 1e-8, &conv);
      break;
    }
  }
  res.converged = conv;
  return res;
}

inline MetricResult evaluate_exact(const SweepSpec& spec,
                                   const RfLinkFit& rf, const EggParams& uw) {
  const RelayConfig relay{spec.protocol, spec.gain_const};
  const ModulationParams mod{spec.mod_p, spec.mod_q};
  const double gamma_th = db_to_linear(spec.gamma_th_db);
  if (spec.protocol == Protocol::fixed_gain_af) {
    switch (spec.metric) {
      case MetricKind::op: return op_af(rf, uw, relay, gamma_th);
      case MetricKind::aber: return aber_af(rf, uw, relay, mod);
      case MetricKind::acc: return acc_af(rf, uw, relay, spec.detection);
    }
  }
  switch (spec.metric) {
    case MetricKind::op: return op_df(rf, uw, gamma_th);
    case MetricKind::aber: return aber_df(rf, uw, mod);
    case MetricKind::acc: return acc_df(rf, uw, spec.detection);
  }
  throw std::logic_error("evaluate_exact: unreachable");
}

inline MetricResult evaluate_asymptotic(const SweepSpec& spec,
                                        const RfLinkFit& rf,
                                        const EggParams& uw) {
  const RelayConfig relay{spec.protocol, spec.gain_const};
  const ModulationParams mod{spec.mod_p, spec.mod_q};
  const double gamma_th = db_to_linear(spec.gamma_th_db);
  if (spec.metric == MetricKind::acc)
    throw std::invalid_argument(
        "no asymptotic form is provided for the average capacity");
  if (spec.protocol == Protocol::fixed_gain_af) {
    return spec.metric == MetricKind::op
               ? op_af_asymptotic(rf, uw, relay, gamma_th)
               : aber_af_asymptotic(rf, uw, relay, mod);
  }
  return spec.metric == MetricKind::op ? op_df_asymptotic(rf, uw, gamma_th)
                                       : aber_df_asymptotic(rf, uw, mod);
}

}  // namespace detail

inline EggTableRow spec_egg_row(const SweepSpec& spec) {
  if (spec.water)
    return table_lookup(*spec.water, spec.bubble_level, spec.temp_gradient);
  return EggTableRow{Water::fresh, 0.0, std::nullopt, *spec.omega,
                     *spec.lambda, *spec.a, *spec.b, *spec.c};
}

inline std::vector<SweepRow> run_sweep(const SweepSpec& spec, int jobs = 1) {
  const EggTableRow row = spec_egg_row(spec);
  const std::size_t n_pts = spec.points_db.size();

  // Task list in deterministic (point-major, method-minor) order.
  struct Task {
    std::size_t point;
    Method method;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < n_pts; ++i)
    for (Method mth : spec.methods) tasks.push_back({i, mth});
  std::vector<SweepRow> rows(tasks.size());

  // The raw MC draws are SNR-free, so one sample set serves every point.
  McSamples samples;
  const bool wants_mc =
      std::find(spec.methods.begin(), spec.methods.end(),
                Method::monte_carlo) != spec.methods.end();
  if (wants_mc) {
    const EggParams uw0 = make_egg(row, spec.detection, 1.0);
    samples =
        draw_samples(RfLinkParams{spec.n, spec.n > 0 ? spec.m : 1.0, 1.0},
                     uw0, spec.mc);
  }

  std::optional<RfLinkFit> base_fit;
  if (spec.n > 0) base_fit = fit_kg(RfLinkParams{spec.n, spec.m, 1.0});

  auto eval_task = [&](std::size_t ti) {
    const Task& task = tasks[ti];
    SweepRow& out = rows[ti];
    out.snr_db = spec.points_db[task.point];
    out.method = task.method;
    const double snr1 = db_to_linear(out.snr_db);
    const double snr2 = spec.snr_axis == SnrAxis::joint
                            ? snr1
                            : db_to_linear(spec.gamma2_db);
    try {
      const EggParams uw = make_egg(row, spec.detection, snr2);
      MetricResult res;
      if (task.method == Method::monte_carlo) {
        res = estimate_metric(samples, spec.metric,
                              RelayConfig{spec.protocol, spec.gain_const},
                              snr1, uw, db_to_linear(spec.gamma_th_db),
                              ModulationParams{spec.mod_p, spec.mod_q},
                              spec.detection);
      } else if (spec.n == 0) {
        if (task.method == Method::asymptotic)
          throw std::invalid_argument(
              "no asymptotic form for the no-reflector baseline");
        res = detail::baseline_exact(spec, snr1, uw);
      } else {
        RfLinkFit fit = *base_fit;
        fit.mean_snr = snr1;
        fit.xi = fit.xi_tilde / snr1;
        res = task.method == Method::exact
                  ? detail::evaluate_exact(spec, fit, uw)
                  : detail::evaluate_asymptotic(spec, fit, uw);
      }
      out.value = res.value;
      out.std_err = res.mc_std_err;
      out.converged = res.converged;
    } catch (const std::exception& e) {
      out.converged = false;
      out.error = e.what();
    }
  };

  const int n_jobs = std::max(1, jobs);
  if (n_jobs == 1) {
    for (std::size_t ti = 0; ti < tasks.size(); ++ti) eval_task(ti);
  } else {
    std::vector<std::thread> pool;
    std::size_t stride = static_cast<std::size_t>(n_jobs);
    for (int w = 0; w < n_jobs; ++w) {
      pool.emplace_back([&, w]() {
        for (std::size_t ti = static_cast<std::size_t>(w); ti < tasks.size();
             ti += stride)
          eval_task(ti);
      });
    }
    for (auto& th : pool) th.join();
  }
  return rows;
}

inline std::string method_name(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::asymptotic: return "asymptotic";
    case Method::monte_carlo: return "mc";
  }
  return "?";
}

inline std::string spec_water_label(const SweepSpec& spec) {
  if (!spec.water) return "custom";
  std::ostringstream s;
  s << water_name(*spec.water) << "-" << spec.bubble_level;
  if (spec.temp_gradient) s << "-" << *spec.temp_gradient;
  return s.str();
}

inline void write_csv(std::ostream& out, const SweepSpec& spec,
                      const std::vector<SweepRow>& rows) {
  out << "param_metric,param_protocol,param_detection,param_n,param_m,"
         "param_water,snr_db,method,value,std_err,converged,error\n";
  out.precision(12);
  const std::string head =
      (spec.metric == MetricKind::op
           ? "op"
           : spec.metric == MetricKind::aber ? "aber" : "acc") +
      std::string(",") +
      (spec.protocol == Protocol::fixed_gain_af ? "af" : "df") + "," +
      (spec.detection == Detection::hd ? "hd" : "imdd") + "," +
      std::to_string(spec.n) + ",";
  for (const auto& r : rows) {
    out << head << spec.m << "," << spec_water_label(spec) << "," << r.snr_db
        << "," << method_name(r.method) << "," << r.value << ",";
    if (r.std_err) out << *r.std_err;
    out << "," << (r.converged ? "true" : "false") << ",";
    // Commas inside error messages would break the row; flatten them.
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    out << err << "\n";
  }
}

}  // namespace riswoc
