#pragma once

#include <string>
#include <vector>

#include "aircomp/harness/scenario.hpp"

namespace aircomp::harness {

// Full-precision decimal form that round-trips back to the same double.
std::string format_real(double v);

// Per-trial rows plus one summary row per scenario, in a single file with
// a leading record-type column. All scenarios must share one bit width.
void write_results_csv(const std::string& path,
                       const std::vector<ScenarioResult>& results, int bits);

// Summary rows only (the analytical gain table with its Monte Carlo
// validation columns).
void write_summary_csv(const std::string& path,
                       const std::vector<ScenarioResult>& results);

// Per-bit correctness after each averaging depth for one scenario.
void write_bit_depth_csv(const std::string& path, const ScenarioResult& r);

void write_gain_sum_csv(const std::string& path,
                        const std::vector<planner::GainPoint>& pts);

void write_gain_max_csv(const std::string& path,
                        const std::vector<planner::GainPoint>& pts, int bits,
                        const planner::BaselineModel& baseline,
                        const phy::DetectionConfig& det,
                        int request_overhead_samples);

}  // namespace aircomp::harness
