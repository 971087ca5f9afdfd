#include "aircomp/phy.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

namespace aircomp::phy {

namespace {
constexpr double kEstimateTol = 1e-12;
}

ChannelEstimate estimate_channel(const ChannelRealization& ch,
                                 const PilotRequest& req, double noise_power,
                                 SeededRng& rng) {
  if (req.m2 < 1) throw std::invalid_argument("pilot m2 must be >= 1");
  if (std::abs(req.pilot_value) == 0.0)
    throw std::invalid_argument("pilot value must be nonzero");
  cplx acc = 0.0;
  for (int m = 0; m < req.m2; ++m) {
    cplx obs = add_noise(ch.reverse * req.pilot_value, noise_power, rng);
    acc += obs / req.pilot_value;
  }
  ChannelEstimate est;
  est.g_hat = acc / static_cast<double>(req.m2);
  est.h_hat = ch.calib * est.g_hat;
  return est;
}

ChannelEstimate perfect_estimate(const ChannelRealization& ch) {
  return {ch.reverse, ch.calib * ch.reverse};
}

JointRxResult joint_transmit(std::span<const double> values,
                             std::span<const std::uint32_t> participants,
                             std::span<const ChannelEstimate> estimates,
                             std::span<const ChannelRealization> channels,
                             const JointTxConfig& cfg, double noise_power,
                             SeededRng& rng) {
  if (cfg.m1 < 1) throw std::invalid_argument("m1 must be >= 1");
  if (values.size() != channels.size() || estimates.size() != channels.size())
    throw std::invalid_argument("values/estimates/channels size mismatch");

  std::vector<cplx> tx(participants.size());
  for (std::size_t k = 0; k < participants.size(); ++k) {
    std::uint32_t i = participants[k];
    if (i >= channels.size())
      throw std::invalid_argument("participant index out of range");
    if (std::abs(estimates[i].h_hat) < kEstimateTol)
      throw std::domain_error("degenerate channel estimate for sensor " +
                              std::to_string(i));
    tx[k] = values[i] / estimates[i].h_hat;
  }

  JointRxResult res;
  for (const cplx& s : tx) res.tx_energy += std::norm(s);
  if (cfg.record_running) res.running.reserve(cfg.m1);

  cplx acc = 0.0;
  for (int rep = 0; rep < cfg.m1; ++rep) {
    cplx y = 0.0;
    for (std::size_t k = 0; k < participants.size(); ++k) {
      std::uint32_t i = participants[k];
      cplx h = channels[i].forward;
      if (cfg.phase_drift_std > 0.0) {
        SeededRng dr = rng.derive(streams::phase_drift, i, rep);
        h *= std::polar(1.0, dr.gaussian(cfg.phase_drift_std));
      }
      y += h * tx[k];
    }
    SeededRng nr = rng.derive(streams::rx_noise, rep);
    y = add_noise(y, noise_power, nr);
    acc += y;
    if (cfg.record_running)
      res.running.push_back(acc.real() / static_cast<double>(rep + 1));
  }
  res.average = acc / static_cast<double>(cfg.m1);
  res.value = res.average.real();
  res.imag_residual = res.average.imag();
  return res;
}

double detection_threshold(const DetectionConfig& cfg, double noise_power) {
  if (cfg.slot_samples < 1)
    throw std::invalid_argument("slot_samples must be >= 1");
  if (!(cfg.false_alarm_target > 0.0 && cfg.false_alarm_target < 1.0))
    throw std::invalid_argument("false_alarm_target must be in (0,1)");
  if (noise_power == 0.0) return 0.0;
  // Noise-only statistic is (sigma^2 / 2S) * chi^2 with 2S degrees of
  // freedom (S complex samples, averaged power).
  boost::math::chi_squared_distribution<double> chi2(2.0 * cfg.slot_samples);
  double q = boost::math::quantile(chi2, 1.0 - cfg.false_alarm_target);
  return noise_power * q / (2.0 * cfg.slot_samples);
}

DetectionOutcome detect_energy(std::span<const std::uint32_t> transmitting,
                               std::span<const ChannelEstimate> estimates,
                               std::span<const ChannelRealization> channels,
                               const DetectionConfig& cfg, double noise_power,
                               SeededRng& rng) {
  DetectionOutcome out;
  out.threshold = detection_threshold(cfg, noise_power);

  cplx signal = 0.0;
  for (std::uint32_t i : transmitting) {
    if (i >= channels.size())
      throw std::invalid_argument("transmitter index out of range");
    if (std::abs(estimates[i].h_hat) < kEstimateTol)
      throw std::domain_error("degenerate channel estimate for sensor " +
                              std::to_string(i));
    signal += channels[i].forward / estimates[i].h_hat;
  }

  double energy = 0.0;
  for (int s = 0; s < cfg.slot_samples; ++s) {
    SeededRng nr = rng.derive(streams::detect_noise, s);
    cplx r = add_noise(signal, noise_power, nr);
    energy += std::norm(r);
  }
  out.statistic = energy / static_cast<double>(cfg.slot_samples);
  out.detected = out.statistic > out.threshold;
  return out;
}

}  // namespace aircomp::phy
