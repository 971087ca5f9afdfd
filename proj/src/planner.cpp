#include "aircomp/planner.hpp"

#include <cmath>
#include <stdexcept>

namespace aircomp::planner {

std::int64_t BaselineModel::samples_per_measurement() const {
  if (!(link_rate_bps > 0.0) || !(bandwidth_hz > 0.0) ||
      bits_per_measurement < 1)
    throw std::invalid_argument("baseline model parameters must be positive");
  double t = static_cast<double>(bits_per_measurement) / link_rate_bps;
  return static_cast<std::int64_t>(std::ceil(t * adc_rate()));
}

double required_snr_db(int bits) {
  if (bits < 1 || bits > 24)
    throw std::invalid_argument("bits out of range [1,24]");
  return 6.02 * bits + 1.76;
}

double effective_snr(int n, double snr_linear, double m1, double m2) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(m1 > 0.0) || !(m2 > 0.0))
    throw std::invalid_argument("m1 and m2 must be positive");
  double nn = static_cast<double>(n);
  return nn * nn * snr_linear / (1.0 / m1 + nn / m2);
}

Plan optimal_plan(int n, double snr_db, int bits,
                  const BaselineModel& baseline) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!std::isfinite(snr_db)) throw std::invalid_argument("snr_db not finite");

  Plan p;
  p.n = n;
  p.snr_db = snr_db;
  p.bits = bits;
  p.required_snr_db = required_snr_db(bits);
  p.m_d = baseline.samples_per_measurement();

  double nn = static_cast<double>(n);
  double snr = undb(snr_db);
  double rt = std::sqrt(nn);
  p.l = nn * snr * undb(-p.required_snr_db);
  p.m1_continuous = (1.0 + rt) / (p.l * nn);
  p.m2_continuous = rt * p.m1_continuous;
  p.m1 = static_cast<std::int64_t>(std::ceil(p.m1_continuous));
  p.m2 = static_cast<std::int64_t>(std::ceil(p.m2_continuous));

  p.snr_eff_db = db(effective_snr(n, snr, static_cast<double>(p.m1),
                                  static_cast<double>(p.m2)));
  p.feasible = p.snr_eff_db >= p.required_snr_db - 1e-9;

  double md = static_cast<double>(p.m_d);
  p.gain_analytic = nn * nn * nn / ((rt + 1.0) * (rt + 1.0)) * snr * md *
                    undb(-p.required_snr_db);
  p.gain_continuous = nn * md / (p.m1_continuous + p.m2_continuous);
  p.gain_integer = nn * md / static_cast<double>(p.m1 + p.m2);
  return p;
}

double max_protocol_gain(int n, int bits, const BaselineModel& baseline,
                         const phy::DetectionConfig& det,
                         int request_overhead_samples) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (bits < 1) throw std::invalid_argument("bits must be >= 1");
  if (request_overhead_samples < 0)
    throw std::invalid_argument("request overhead must be >= 0");
  double per_round = det.slot_samples + request_overhead_samples;
  double cost = static_cast<double>(bits) * per_round;
  return static_cast<double>(n) *
         static_cast<double>(baseline.samples_per_measurement()) / cost;
}

std::vector<GainPoint> gain_curve(std::span<const int> n_values,
                                  std::span<const double> snr_db_values,
                                  int bits, const BaselineModel& baseline,
                                  GainFunction which,
                                  const phy::DetectionConfig& det,
                                  int request_overhead_samples) {
  std::vector<GainPoint> out;
  out.reserve(n_values.size() * std::max<std::size_t>(1, snr_db_values.size()));
  for (int n : n_values) {
    if (which == GainFunction::max) {
      GainPoint pt;
      pt.n = n;
      pt.snr_db = snr_db_values.empty() ? 0.0 : snr_db_values.front();
      pt.gain =
          max_protocol_gain(n, bits, baseline, det, request_overhead_samples);
      out.push_back(pt);
      continue;
    }
    for (double s : snr_db_values) {
      GainPoint pt;
      pt.n = n;
      pt.snr_db = s;
      pt.plan = optimal_plan(n, s, bits, baseline);
      pt.gain = pt.plan.gain_analytic;
      out.push_back(pt);
    }
  }
  return out;
}

}  // namespace aircomp::planner
