#include "aircomp/protocol.hpp"

#include <numeric>
#include <stdexcept>

namespace aircomp {

ProtocolContext::ProtocolContext(const Fleet& fleet, const planner::Plan& plan,
                                 const QuantizationSpec& resolution,
                                 const phy::DetectionConfig& detection,
                                 SeededRng rng)
    : fleet_(&fleet),
      plan_(plan),
      resolution_(resolution),
      detection_(detection),
      rng_(rng) {
  if (fleet.channels.empty())
    throw std::invalid_argument("fleet has no sensors");
  if (plan_.m1 < 1 || plan_.m2 < 1)
    throw std::invalid_argument("plan repetitions must be >= 1");
}

const std::vector<phy::ChannelEstimate>& ProtocolContext::estimates() {
  if (!estimates_) {
    std::vector<phy::ChannelEstimate> est(fleet_->size());
    phy::PilotRequest req;
    req.m2 = static_cast<int>(plan_.m2);
    for (std::size_t i = 0; i < fleet_->size(); ++i) {
      SeededRng r = rng_.derive(streams::pilot, i);
      est[i] = phy::estimate_channel(fleet_->channels[i], req,
                                     fleet_->budget.noise_power, r);
    }
    estimates_ = std::move(est);
  }
  return *estimates_;
}

phy::JointRxResult ProtocolContext::transmit(
    std::span<const double> values, std::span<const std::uint32_t> participants,
    bool record_running) {
  phy::JointTxConfig cfg;
  cfg.m1 = static_cast<int>(plan_.m1);
  cfg.phase_drift_std = fleet_->phase_drift_std;
  cfg.record_running = record_running;
  SeededRng r = rng_.derive(streams::transmission, tx_counter_++);
  auto res = phy::joint_transmit(values, participants, estimates(),
                                 fleet_->channels, cfg,
                                 fleet_->budget.noise_power, r);
  rep_counter_ += cfg.m1;
  return res;
}

phy::DetectionOutcome ProtocolContext::detect(
    std::span<const std::uint32_t> transmitting) {
  SeededRng r = rng_.derive(streams::detection, det_counter_++);
  return phy::detect_energy(transmitting, estimates(), fleet_->channels,
                            detection_, fleet_->budget.noise_power, r);
}

std::span<const std::uint32_t> ProtocolContext::all_sensors() {
  if (everyone_.size() != fleet_->size()) {
    everyone_.resize(fleet_->size());
    std::iota(everyone_.begin(), everyone_.end(), 0u);
  }
  return everyone_;
}

}  // namespace aircomp
