#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aircomp/channel.hpp"
#include "aircomp/core.hpp"

namespace aircomp::phy {

struct PilotRequest {
  int m2 = 1;                   // downlink pilot repetitions to average
  cplx pilot_value = {1.0, 0.0};
};

// What one sensor knows about its own link. h_hat = calib * g_hat is the
// divisor used to invert the forward channel at transmit time.
struct ChannelEstimate {
  cplx g_hat;
  cplx h_hat;
};

ChannelEstimate estimate_channel(const ChannelRealization& ch,
                                 const PilotRequest& req, double noise_power,
                                 SeededRng& rng);

// Exact-knowledge estimate, for tests and noiseless baselines.
ChannelEstimate perfect_estimate(const ChannelRealization& ch);

struct JointTxConfig {
  int m1 = 1;                    // repetitions averaged at the receiver
  double phase_drift_std = 0.0;  // radians per repetition, per sensor
  bool record_running = false;   // keep the running average after each rep
};

struct JointRxResult {
  double value = 0.0;          // Re of the repetition-averaged sum
  double imag_residual = 0.0;  // Im of the same average
  cplx average{0.0, 0.0};
  // Running Re(average) after repetition r; filled when record_running.
  std::vector<double> running;
  // Energy spent per repetition, sum |u_i / h_hat_i|^2. Unity-magnitude
  // channels keep this near sum u_i^2; clipped Rayleigh channels can
  // inflate it, which callers may want to log.
  double tx_energy = 0.0;
};

// All participants transmit their (pre-mapped) values simultaneously,
// each pre-dividing by its channel estimate; the cluster head averages
// m1 such repetitions. values[i] belongs to sensor i; only indices in
// participants transmit.
JointRxResult joint_transmit(std::span<const double> values,
                             std::span<const std::uint32_t> participants,
                             std::span<const ChannelEstimate> estimates,
                             std::span<const ChannelRealization> channels,
                             const JointTxConfig& cfg, double noise_power,
                             SeededRng& rng);

struct DetectionConfig {
  int slot_samples = 4;             // S
  double false_alarm_target = 1e-3;
};

// Energy threshold giving the configured false-alarm rate under
// noise only. Zero noise power gives a zero threshold; detection then
// reduces to "any energy at all".
double detection_threshold(const DetectionConfig& cfg, double noise_power);

struct DetectionOutcome {
  bool detected = false;
  double statistic = 0.0;
  double threshold = 0.0;
};

// One OOK slot: every sensor in transmitting sends a full-scale tone,
// pre-compensated by its estimate so contributions add coherently. The
// cluster head averages |r|^2 over slot_samples and compares against
// the threshold (strictly greater).
DetectionOutcome detect_energy(std::span<const std::uint32_t> transmitting,
                               std::span<const ChannelEstimate> estimates,
                               std::span<const ChannelRealization> channels,
                               const DetectionConfig& cfg, double noise_power,
                               SeededRng& rng);

}  // namespace aircomp::phy
