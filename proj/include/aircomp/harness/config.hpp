#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "aircomp/bitagg.hpp"
#include "aircomp/channel.hpp"
#include "aircomp/linagg.hpp"
#include "aircomp/planner.hpp"

namespace aircomp::harness {

// Bad flags or config contents (process exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unreadable input or unwritable output (process exit code 4).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class FunctionKind {
  sum,
  mean,
  geometric_mean,
  weighted_mean,
  count,
  variance,
  regression,
  max,
  min,
  percentile,
};

std::string to_string(FunctionKind k);
FunctionKind function_from_string(const std::string& name);

struct FunctionRequest {
  FunctionKind kind = FunctionKind::sum;
  linagg::Predicate predicate = linagg::Predicate::at_least(0.5);
  std::vector<double> weights;  // empty = default ramp (i+1)/n
  bool normalize_weights = true;
  double percentile_rank = 0.5;
  bitagg::PercentilePrior prior = bitagg::PercentilePrior::uniform;
  bool measure_n = false;
  double log_floor = 1e-6;
};

struct ScenarioConfig {
  std::vector<int> n_values = {100};
  std::vector<double> snr_db_values = {10.0};
  int bits = 8;
  double full_scale = 1.0;
  ChannelModelConfig channel;
  phy::DetectionConfig detection;
  int request_overhead_samples = 0;
  planner::BaselineModel baseline;
  FunctionRequest function;
  int trials = 500;
  std::uint64_t seed = 1;
  std::string out;
  std::int64_t m1_override = 0;  // 0 keeps the planner's value
  std::int64_t m2_override = 0;
  int running_depth = 0;  // per-repetition bit tracking (sum only)

  bool scalar() const {
    return n_values.size() == 1 && snr_db_values.size() == 1;
  }
};

// Strict parse: unknown keys and ill-typed values raise ConfigError with
// the offending key in the message.
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config(const std::string& path);

}  // namespace aircomp::harness
