#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "aircomp/phy.hpp"
#include "aircomp/planner.hpp"

namespace aircomp {

// A cluster for the duration of one aggregation request: fixed channels
// (block fading), one shared power budget.
struct Fleet {
  std::vector<ChannelRealization> channels;
  LinkBudget budget;
  double phase_drift_std = 0.0;

  std::size_t size() const { return channels.size(); }
};

// Serialises the over-the-air traffic of one request: pilots happen once
// (lazily, m2 repetitions per sensor), then every joint transmission and
// every detection slot draws from its own derived stream, numbered in
// issue order. Protocols above this layer stay deterministic for a fixed
// (seed, stream) pair regardless of how many requests ran before.
class ProtocolContext {
 public:
  ProtocolContext(const Fleet& fleet, const planner::Plan& plan,
                  const QuantizationSpec& resolution,
                  const phy::DetectionConfig& detection, SeededRng rng);

  const Fleet& fleet() const { return *fleet_; }
  const planner::Plan& plan() const { return plan_; }
  const QuantizationSpec& resolution() const { return resolution_; }
  const phy::DetectionConfig& detection() const { return detection_; }

  // Channel estimates for every sensor, measured on first use.
  const std::vector<phy::ChannelEstimate>& estimates();

  // One averaged joint transmission (m1 repetitions from the plan).
  phy::JointRxResult transmit(std::span<const double> values,
                              std::span<const std::uint32_t> participants,
                              bool record_running = false);

  phy::DetectionOutcome detect(std::span<const std::uint32_t> transmitting);

  // all_sensors() is the participant list {0, ..., n-1}.
  std::span<const std::uint32_t> all_sensors();

  int transmissions_used() const { return tx_counter_; }
  int detection_slots_used() const { return det_counter_; }
  int repetitions_used() const { return rep_counter_; }

 private:
  const Fleet* fleet_;
  planner::Plan plan_;
  QuantizationSpec resolution_;
  phy::DetectionConfig detection_;
  SeededRng rng_;
  std::optional<std::vector<phy::ChannelEstimate>> estimates_;
  std::vector<std::uint32_t> everyone_;
  int tx_counter_ = 0;
  int det_counter_ = 0;
  int rep_counter_ = 0;
};

}  // namespace aircomp
