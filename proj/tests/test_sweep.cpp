#include <cmath>
#include <sstream>

#include "doctest.h"
#include "riswoc/sweep.hpp"

using namespace riswoc;

namespace {

SweepSpec parse_str(const std::string& text) {
  std::istringstream in(text);
  return parse_spec(in);
}

const char* kBaseSpec =
    "metric = op\n"
    "protocol = af\n"
    "detection = imdd\n"
    "n = 2\n"
    "m = 2\n"
    "water = thermal\n"
    "bubble_level = 2.4\n"
    "temp_gradient = 0.05\n"
    "points_db = 0,10,15\n";

}  // namespace

TEST_CASE("spec parsing and validation errors name the field") {
  const auto spec = parse_str(kBaseSpec);
  CHECK(spec.metric == MetricKind::op);
  CHECK(spec.protocol == Protocol::fixed_gain_af);
  CHECK(spec.detection == Detection::imdd);
  CHECK(spec.n == 2);
  CHECK(spec.points_db.size() == 3);
  CHECK(spec.gamma_th_db == doctest::Approx(2.0));  // default
  CHECK(spec.gain_const == doctest::Approx(1.5));   // default

  CHECK_THROWS_WITH_AS(parse_str("protocol = af\n"),
                       doctest::Contains("metric"), const spec_error&);
  CHECK_THROWS_WITH_AS(
      parse_str("metric = op\nprotocol = af\ndetection = hd\n"
                "water = salty\nbubble_level = 4.7\npoints_db = \n"),
      doctest::Contains("points_db"), const spec_error&);
  CHECK_THROWS_WITH_AS(
      parse_str(std::string(kBaseSpec) + "bogus_key = 1\n"),
      doctest::Contains("bogus_key"), const spec_error&);
  CHECK_THROWS_WITH_AS(
      parse_str(std::string(kBaseSpec) + "omega = 0.3\n"),
      doctest::Contains("omega"), const spec_error&);
  CHECK_THROWS_WITH_AS(
      parse_str("metric = op\nprotocol = af\ndetection = hd\n"
                "water = salty\nbubble_level = 4.7\n"
                "snr_axis = rf\npoints_db = 0,5\n"),
      doctest::Contains("gamma2_db"), const spec_error&);
}

TEST_CASE("duplicate keys are rejected") {
  CHECK_THROWS_WITH_AS(
      parse_str(std::string(kBaseSpec) + "points_db = 0:20:5\n"),
      doctest::Contains("points_db"), const spec_error&);
}

TEST_CASE("range grids expand inclusively") {
  std::string text(kBaseSpec);
  text.replace(text.find("points_db = 0,10,15"), 19, "points_db = 0:20:5\n");
  const auto spec = parse_str(text);
  REQUIRE(spec.points_db.size() == 5);
  CHECK(spec.points_db.front() == doctest::Approx(0.0));
  CHECK(spec.points_db.back() == doctest::Approx(20.0));
}

TEST_CASE("serialize/parse round trip preserves the run plan") {
  auto spec = parse_str(std::string(kBaseSpec) +
                        "methods = exact,mc\nmc_samples = 5000\n"
                        "mc_seed = 77\n");
  const std::string text = serialize_spec(spec);
  std::istringstream in(text);
  const auto again = parse_spec(in);
  CHECK(serialize_spec(again) == text);
  CHECK(again.methods == spec.methods);
  CHECK(again.points_db == spec.points_db);
  CHECK(again.mc.seed == spec.mc.seed);
}

TEST_CASE("sweep rows are deterministic and ordered") {
  auto spec = parse_str(std::string(kBaseSpec) + "methods = exact\n");
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].snr_db == doctest::Approx(0.0));
  CHECK(rows[2].snr_db == doctest::Approx(15.0));
  for (const auto& r : rows) {
    CHECK(r.error.empty());
    CHECK(r.converged);
  }
  // Matches the directly computed end-to-end CDF at 15 dB / 2 dB threshold.
  CHECK(rows[2].value == doctest::Approx(0.026370194515278396).epsilon(1e-6));

  // Worker threads must not change values or ordering.
  const auto rows4 = run_sweep(spec, 4);
  REQUIRE(rows4.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows4[i].value == rows[i].value);
  }
}

TEST_CASE("MC column agrees with the exact column") {
  auto spec = parse_str(std::string(kBaseSpec) +
                        "methods = exact,mc\nmc_samples = 200000\n");
  spec.points_db = {10.0};
  const auto rows = run_sweep(spec, 2);
  REQUIRE(rows.size() == 2);
  const auto& exact = rows[0];
  const auto& mc = rows[1];
  REQUIRE(mc.std_err.has_value());
  // Moment-fit approximation on hop 1 adds a small systematic offset.
  CHECK(std::fabs(exact.value - mc.value) < 3.0 * *mc.std_err + 2e-3);
}

TEST_CASE("per-point failures land in the error column") {
  auto spec = parse_str(std::string(kBaseSpec) + "methods = asymptotic\n");
  spec.n = 0;  // the baseline has no asymptotic form
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK_FALSE(r.error.empty());
    CHECK_FALSE(r.converged);
  }
}

TEST_CASE("no-reflector baseline is worse than the reflective link") {
  auto spec = parse_str(std::string(kBaseSpec) + "methods = exact\n");
  auto base = spec;
  base.n = 0;
  const auto with_ris = run_sweep(spec);
  const auto without = run_sweep(base);
  for (std::size_t i = 0; i < with_ris.size(); ++i) {
    CHECK(without[i].error.empty());
    CHECK(without[i].value >= with_ris[i].value - 1e-9);
  }
}

TEST_CASE("CSV output schema") {
  auto spec = parse_str(std::string(kBaseSpec) + "methods = exact\n");
  spec.points_db = {10.0};
  const auto rows = run_sweep(spec);
  std::ostringstream out;
  write_csv(out, spec, rows);
  const std::string text = out.str();
  CHECK(text.rfind("param_metric,param_protocol,param_detection,param_n,"
                   "param_m,param_water,snr_db,method,value,std_err,"
                   "converged,error\n", 0) == 0);
  CHECK(text.find("op,af,imdd,2,2,thermal-2.4-0.05,10,exact,") !=
        std::string::npos);
}
