#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aircomp/phy.hpp"

namespace aircomp::planner {

// Conventional digital collection baseline: each sensor serialises one
// b-bit measurement over the link while the receiver samples at the ADC
// rate, so one measurement occupies samples_per_measurement() samples.
struct BaselineModel {
  int bits_per_measurement = 8;
  double link_rate_bps = 250e3;
  double bandwidth_hz = 2e6;

  double adc_rate() const { return 2.0 * bandwidth_hz; }
  std::int64_t samples_per_measurement() const;
};

// dB of effective SNR needed to resolve b bits of the result.
double required_snr_db(int bits);

// Effective SNR (linear) of the averaged sum with m1 transmit repetitions
// and m2 pilot repetitions per sensor.
double effective_snr(int n, double snr_linear, double m1, double m2);

struct Plan {
  int n = 0;
  double snr_db = 0.0;
  int bits = 0;

  double l = 0.0;  // derived repetition constraint constant
  double m1_continuous = 0.0;
  double m2_continuous = 0.0;
  std::int64_t m1 = 0;
  std::int64_t m2 = 0;
  std::int64_t m_d = 0;

  double required_snr_db = 0.0;
  double snr_eff_db = 0.0;  // at the integer allocation
  bool feasible = false;    // snr_eff_db meets required_snr_db

  double gain_analytic = 0.0;    // closed form at the continuous optimum
  double gain_continuous = 0.0;  // n*m_d / (m1_continuous + m2_continuous)
  double gain_integer = 0.0;     // n*m_d / (m1 + m2)
};

Plan optimal_plan(int n, double snr_db, int bits,
                  const BaselineModel& baseline = {});

// Samples per resolved result bit for the bitwise max/min protocols: one
// detection slot plus any per-round request overhead.
double max_protocol_gain(int n, int bits, const BaselineModel& baseline,
                         const phy::DetectionConfig& det,
                         int request_overhead_samples = 0);

enum class GainFunction { sum, max };

struct GainPoint {
  int n = 0;
  double snr_db = 0.0;
  double gain = 0.0;
  Plan plan;  // populated for GainFunction::sum
};

std::vector<GainPoint> gain_curve(std::span<const int> n_values,
                                  std::span<const double> snr_db_values,
                                  int bits, const BaselineModel& baseline,
                                  GainFunction which,
                                  const phy::DetectionConfig& det = {},
                                  int request_overhead_samples = 0);

}  // namespace aircomp::planner
