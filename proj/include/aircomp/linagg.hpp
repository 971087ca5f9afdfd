#pragma once

#include <limits>
#include <span>
#include <vector>

#include "aircomp/protocol.hpp"

namespace aircomp::linagg {

// Half-open value interval [lo, hi).
struct Predicate {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double v) const { return v >= lo && v < hi; }

  static Predicate at_least(double t) { return {t, Predicate{}.hi}; }
  static Predicate interval(double lo, double hi) { return {lo, hi}; }
  static Predicate everything() { return {}; }
};

struct Diagnostics {
  double imag_residual = 0.0;  // largest |Im| seen across transmissions
  int clamp_count = 0;         // values clamped while mapping to [0,1]
  int transmissions = 0;
  int repetitions = 0;
  double tx_energy = 0.0;
  bool variance_clamped = false;
  int n_used = 0;
  bool n_measured = false;
};

struct AggregateResult {
  double value = 0.0;
  double intercept = 0.0;  // regression only
  // Over-the-air moments, in a fixed per-function order:
  //   sum: {sum}            mean: {mean}
  //   geometric mean: {mean_log}
  //   weighted mean: {weighted_sum, weight_total}
  //   variance: {mean, mean_sq}
  //   regression: {mean_x, mean_y, mean_xy, mean_xsq}
  // Reported values are recomputed from exactly these doubles.
  std::vector<double> raw_moments;
  Diagnostics diag;
  std::vector<double> running;  // running estimate per repetition (sum only)
};

AggregateResult aggregate_sum(std::span<const double> values,
                              ProtocolContext& ctx,
                              bool record_running = false);

AggregateResult aggregate_mean(std::span<const double> values,
                               ProtocolContext& ctx, bool measure_n = false);

// Rejects any value below log_floor (log map would diverge at zero).
AggregateResult aggregate_geometric_mean(std::span<const double> values,
                                         ProtocolContext& ctx,
                                         double log_floor = 1e-6);

AggregateResult aggregate_weighted_mean(std::span<const double> values,
                                        std::span<const double> weights,
                                        bool normalize, ProtocolContext& ctx);

struct CountResult {
  long count = 0;
  double raw = 0.0;  // analog estimate before rounding
  Diagnostics diag;
};

CountResult aggregate_count(std::span<const double> values,
                            const Predicate& pred, ProtocolContext& ctx);

AggregateResult aggregate_variance(std::span<const double> values,
                                   ProtocolContext& ctx,
                                   bool measure_n = false);

AggregateResult aggregate_regression(std::span<const double> xs,
                                     std::span<const double> ys,
                                     ProtocolContext& ctx,
                                     bool measure_n = false,
                                     double degenerate_tol = 1e-9);

}  // namespace aircomp::linagg
