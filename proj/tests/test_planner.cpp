#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "aircomp/planner.hpp"

using namespace aircomp;
using namespace aircomp::planner;

TEST_CASE("resolution requirement in dB") {
  CHECK(required_snr_db(8) == doctest::Approx(49.92).epsilon(1e-12));
  CHECK(required_snr_db(1) == doctest::Approx(7.78).epsilon(1e-12));
  CHECK(required_snr_db(12) == doctest::Approx(74.0).epsilon(1e-12));
  CHECK_THROWS_AS(required_snr_db(0), std::invalid_argument);
}

TEST_CASE("baseline cost per measurement") {
  BaselineModel b;  // 8 bits at 250 kbps sampled at 4 Msps
  CHECK(b.adc_rate() == doctest::Approx(4e6));
  CHECK(b.samples_per_measurement() == 128);
  b.bits_per_measurement = 10;
  CHECK(b.samples_per_measurement() == 160);
  b.link_rate_bps = 0.0;
  CHECK_THROWS_AS(b.samples_per_measurement(), std::invalid_argument);
}

TEST_CASE("headline plan at n=100, 12 dB, 8 bits") {
  Plan p = optimal_plan(100, 12.0, 8);
  CHECK(p.m_d == 128);
  CHECK(p.m1 == 7);
  CHECK(p.m2 == 69);
  CHECK(p.gain_analytic > 140.0);
  CHECK(p.gain_analytic < 195.0);
  CHECK(p.feasible);
  // integer repetitions only strengthen the effective SNR
  CHECK(p.snr_eff_db >= p.required_snr_db);
}

TEST_CASE("continuous optimum meets the requirement with equality") {
  SeededRng rng(71, 0);
  for (int i = 0; i < 400; ++i) {
    int n = 2 + static_cast<int>(rng.integer(499));
    double snr_db = rng.uniform(0.0, 30.0);
    int bits = 4 + static_cast<int>(rng.integer(9));
    Plan p = optimal_plan(n, snr_db, bits);
    double eff = effective_snr(n, undb(snr_db), p.m1_continuous,
                               p.m2_continuous);
    CHECK(db(eff) == doctest::Approx(p.required_snr_db).epsilon(1e-9));
    // closed form equals the cost ratio at the continuous optimum
    double ratio = n * static_cast<double>(p.m_d) /
                   (p.m1_continuous + p.m2_continuous);
    CHECK(p.gain_analytic == doctest::Approx(ratio).epsilon(1e-12));
    CHECK(p.gain_continuous == doctest::Approx(ratio).epsilon(1e-12));
    CHECK(p.m1 == static_cast<std::int64_t>(std::ceil(p.m1_continuous)));
    CHECK(p.m2 == static_cast<std::int64_t>(std::ceil(p.m2_continuous)));
    CHECK(p.m2_continuous ==
          doctest::Approx(std::sqrt(double(n)) * p.m1_continuous)
              .epsilon(1e-12));
  }
}

TEST_CASE("perturbing the split never cuts total cost") {
  // hold the effective-SNR requirement; move m1 off the optimum and let
  // m2 absorb it
  SeededRng rng(73, 0);
  for (int i = 0; i < 400; ++i) {
    int n = 2 + static_cast<int>(rng.integer(499));
    double snr_db = rng.uniform(0.0, 30.0);
    int bits = 4 + static_cast<int>(rng.integer(9));
    Plan p = optimal_plan(n, snr_db, bits);
    double best = p.m1_continuous + p.m2_continuous;
    for (double f : {0.99, 1.01}) {
      double m1 = p.m1_continuous * f;
      double m2 = n / (p.l * n - 1.0 / m1);
      REQUIRE(m2 > 0.0);
      double eff = effective_snr(n, undb(snr_db), m1, m2);
      CHECK(db(eff) == doctest::Approx(p.required_snr_db).epsilon(1e-9));
      CHECK(m1 + m2 >= best * (1.0 - 1e-12));
    }
  }
}

TEST_CASE("gain grows with cluster size and link quality") {
  double prev = 0.0;
  for (int n : {10, 20, 50, 100, 200}) {
    Plan p = optimal_plan(n, 12.0, 8);
    CHECK(p.gain_analytic > prev);
    prev = p.gain_analytic;
  }
  prev = 0.0;
  for (double s : {0.0, 6.0, 12.0, 18.0}) {
    Plan p = optimal_plan(100, s, 8);
    CHECK(p.gain_analytic > prev);
    prev = p.gain_analytic;
  }
}

TEST_CASE("sum gain scales roughly with n squared") {
  std::vector<int> ns;
  for (int n = 20; n <= 100; n += 10) ns.push_back(n);
  double sx = 0, sy = 0, sxy = 0, sxx = 0;
  for (int n : ns) {
    Plan p = optimal_plan(n, 12.0, 8);
    double lx = std::log(static_cast<double>(n));
    double ly = std::log(p.gain_analytic);
    sx += lx;
    sy += ly;
    sxy += lx * ly;
    sxx += lx * lx;
  }
  double m = ns.size();
  double slope = (sxy - sx * sy / m) / (sxx - sx * sx / m);
  CHECK(slope > 1.7);
  CHECK(slope < 2.3);
}

TEST_CASE("bitwise max protocol gain is linear in n") {
  BaselineModel base;
  phy::DetectionConfig det;  // 4 samples per round
  CHECK(max_protocol_gain(100, 8, base, det) ==
        doctest::Approx(100.0 * 128.0 / 32.0).epsilon(1e-12));
  for (int n : {5, 50, 500})
    CHECK(max_protocol_gain(2 * n, 8, base, det) ==
          doctest::Approx(2.0 * max_protocol_gain(n, 8, base, det))
              .epsilon(1e-12));
  // per-round overhead just rescales the cost
  CHECK(max_protocol_gain(100, 8, base, det, 4) ==
        doctest::Approx(100.0 * 128.0 / 64.0).epsilon(1e-12));
}

TEST_CASE("gain curve covers the requested grid") {
  std::vector<int> ns = {10, 100};
  std::vector<double> snrs = {6.0, 12.0, 18.0};
  BaselineModel base;
  auto sum_pts = gain_curve(ns, snrs, 8, base, GainFunction::sum);
  REQUIRE(sum_pts.size() == 6);
  CHECK(sum_pts[0].n == 10);
  CHECK(sum_pts[0].snr_db == 6.0);
  CHECK(sum_pts[0].gain == doctest::Approx(sum_pts[0].plan.gain_analytic));

  auto max_pts = gain_curve(ns, snrs, 8, base, GainFunction::max);
  REQUIRE(max_pts.size() == 2);
  CHECK(max_pts[1].gain ==
        doctest::Approx(max_protocol_gain(100, 8, base, {})).epsilon(1e-12));
}

TEST_CASE("planner input validation") {
  CHECK_THROWS_AS(optimal_plan(0, 10.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(optimal_plan(10, 10.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(effective_snr(10, 1.0, 0.0, 5.0), std::invalid_argument);
}
