#pragma once

#include <cstdint>
#include <vector>

#include "aircomp/harness/config.hpp"

namespace aircomp::harness {

struct TrialRow {
  int trial = 0;
  double true_value = 0.0;
  double computed_value = 0.0;
  double abs_error = 0.0;
  std::vector<std::uint8_t> bit_correct;  // index 0 = most significant bit
  int repetitions_used = 0;
  // Flattened depth x bits correctness when running_depth tracking is on.
  std::vector<std::uint8_t> depth_bits;
};

struct ScenarioResult {
  int n = 0;
  double snr_db = 0.0;
  int bits = 0;
  FunctionKind kind = FunctionKind::sum;
  std::uint64_t seed = 0;
  planner::Plan plan;
  double output_lsb = 0.0;
  double rms_error = 0.0;
  int running_depth = 0;
  std::vector<TrialRow> trials;
};

enum class ExecMode { serial, parallel };

// One (n, snr) cell of the configured grid; trials run independently and
// reproducibly (the per-trial stream depends only on the scenario
// parameters, the seed and the trial index, never on grid position or
// thread count).
ScenarioResult run_scenario(const ScenarioConfig& cfg, int n, double snr_db,
                            ExecMode mode);

std::vector<ScenarioResult> run_sweep(const ScenarioConfig& cfg,
                                      ExecMode mode);

// The per-trial RNG root, exposed for tests that re-derive a trial.
SeededRng trial_rng(const ScenarioConfig& cfg, int n, double snr_db,
                    int trial);

}  // namespace aircomp::harness
