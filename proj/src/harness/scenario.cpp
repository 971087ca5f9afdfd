#include "aircomp/harness/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace aircomp::harness {

namespace {

struct OutputCoding {
  double offset = 0.0;
  QuantizationSpec q;
};

std::vector<double> effective_weights(const FunctionRequest& f, int n) {
  if (!f.weights.empty()) return f.weights;
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i)
    w[i] = static_cast<double>(i + 1) / static_cast<double>(n);
  return w;
}

OutputCoding output_coding(const ScenarioConfig& cfg, int n,
                           const std::vector<double>& weights) {
  double fs = cfg.full_scale;
  int b = cfg.bits;
  switch (cfg.function.kind) {
    case FunctionKind::sum:
      return {0.0, QuantizationSpec(b, n * fs)};
    case FunctionKind::mean:
    case FunctionKind::geometric_mean:
    case FunctionKind::max:
    case FunctionKind::min:
    case FunctionKind::percentile:
      return {0.0, QuantizationSpec(b, fs)};
    case FunctionKind::weighted_mean: {
      if (cfg.function.normalize_weights)
        return {0.0, QuantizationSpec(b, fs)};
      double wab = 0.0;
      for (double w : weights) wab += std::abs(w);
      return {0.0, QuantizationSpec(b, std::max(wab, 1e-12) * fs)};
    }
    case FunctionKind::count:
      return {0.0, QuantizationSpec(b, static_cast<double>((1 << b) - 1))};
    case FunctionKind::variance:
      return {0.0, QuantizationSpec(b, 0.25 * fs * fs)};
    case FunctionKind::regression:
      // slope can leave this range for degenerate draws; codes then clamp
      return {-4.0 * fs, QuantizationSpec(b, 8.0 * fs)};
  }
  throw std::logic_error("unhandled function kind");
}

void fill_bits(TrialRow& row, double true_v, double comp_v,
               const OutputCoding& oc) {
  std::uint32_t ct = quantize(true_v - oc.offset, oc.q).code;
  std::uint32_t cc = quantize(comp_v - oc.offset, oc.q).code;
  int b = oc.q.bits;
  row.bit_correct.resize(b);
  for (int j = 0; j < b; ++j) {
    int k = b - 1 - j;
    row.bit_correct[j] = (((ct ^ cc) >> k) & 1u) == 0 ? 1 : 0;
  }
}

planner::Plan scenario_plan(const ScenarioConfig& cfg, int n, double snr_db) {
  planner::Plan plan = planner::optimal_plan(n, snr_db, cfg.bits, cfg.baseline);
  if (cfg.m1_override > 0) plan.m1 = cfg.m1_override;
  if (cfg.m2_override > 0) plan.m2 = cfg.m2_override;
  if (cfg.m1_override > 0 || cfg.m2_override > 0) {
    plan.snr_eff_db =
        db(planner::effective_snr(n, undb(snr_db), static_cast<double>(plan.m1),
                                  static_cast<double>(plan.m2)));
    plan.feasible = plan.snr_eff_db >= plan.required_snr_db - 1e-9;
    plan.gain_integer = static_cast<double>(n) *
                        static_cast<double>(plan.m_d) /
                        static_cast<double>(plan.m1 + plan.m2);
  }
  return plan;
}

TrialRow run_one_trial(const ScenarioConfig& cfg, int n, double snr_db,
                       const planner::Plan& plan,
                       const std::vector<double>& weights,
                       const OutputCoding& oc, int trial) {
  SeededRng rng = trial_rng(cfg, n, snr_db, trial);
  double fs = cfg.full_scale;
  const FunctionRequest& f = cfg.function;

  SeededRng vs = rng.derive(streams::sensor_values);
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) {
    SeededRng r = vs.derive(static_cast<std::uint64_t>(i));
    x[i] = r.uniform(0.0, fs);
  }
  if (f.kind == FunctionKind::geometric_mean)
    for (double& v : x) v = std::max(v, f.log_floor);

  Fleet fleet;
  fleet.channels = draw_channels(static_cast<std::size_t>(n), cfg.channel, rng);
  fleet.budget = LinkBudget::from_snr_db(snr_db);
  fleet.phase_drift_std = cfg.channel.phase_drift_std;

  QuantizationSpec res_spec(cfg.bits, fs);
  ProtocolContext ctx(fleet, plan, res_spec, cfg.detection,
                      rng.derive(streams::protocol));

  TrialRow row;
  row.trial = trial;

  switch (f.kind) {
    case FunctionKind::sum: {
      bool track = cfg.running_depth > 0;
      auto r = linagg::aggregate_sum(x, ctx, track);
      row.true_value = std::accumulate(x.begin(), x.end(), 0.0);
      row.computed_value = r.value;
      if (track) {
        int depth = std::min<int>(cfg.running_depth,
                                  static_cast<int>(r.running.size()));
        std::uint32_t ct = quantize(row.true_value, oc.q).code;
        row.depth_bits.assign(static_cast<std::size_t>(depth) * cfg.bits, 0);
        for (int d = 0; d < depth; ++d) {
          std::uint32_t cd = quantize(r.running[d], oc.q).code;
          for (int j = 0; j < cfg.bits; ++j) {
            int k = cfg.bits - 1 - j;
            row.depth_bits[static_cast<std::size_t>(d) * cfg.bits + j] =
                (((ct ^ cd) >> k) & 1u) == 0 ? 1 : 0;
          }
        }
      }
      break;
    }
    case FunctionKind::mean: {
      auto r = linagg::aggregate_mean(x, ctx, f.measure_n);
      row.true_value =
          std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
      row.computed_value = r.value;
      break;
    }
    case FunctionKind::geometric_mean: {
      auto r = linagg::aggregate_geometric_mean(x, ctx, f.log_floor);
      double ml = 0.0;
      for (double v : x) ml += std::log(v);
      row.true_value = std::exp(ml / static_cast<double>(n));
      row.computed_value = r.value;
      break;
    }
    case FunctionKind::weighted_mean: {
      auto r = linagg::aggregate_weighted_mean(x, weights,
                                               f.normalize_weights, ctx);
      double ws = 0.0, wt = 0.0;
      for (int i = 0; i < n; ++i) {
        ws += weights[i] * x[i];
        wt += weights[i];
      }
      row.true_value = f.normalize_weights ? ws / wt : ws;
      row.computed_value = r.value;
      break;
    }
    case FunctionKind::count: {
      auto r = linagg::aggregate_count(x, f.predicate, ctx);
      long t = 0;
      for (double v : x)
        if (f.predicate.contains(v)) ++t;
      row.true_value = static_cast<double>(t);
      row.computed_value = static_cast<double>(r.count);
      break;
    }
    case FunctionKind::variance: {
      auto r = linagg::aggregate_variance(x, ctx, f.measure_n);
      double m = 0.0, m2 = 0.0;
      for (double v : x) {
        m += v;
        m2 += v * v;
      }
      m /= n;
      m2 /= n;
      row.true_value = m2 - m * m;
      row.computed_value = r.value;
      break;
    }
    case FunctionKind::regression: {
      SeededRng as = rng.derive(streams::sensor_values_aux);
      std::vector<double> y(n);
      for (int i = 0; i < n; ++i) {
        SeededRng r = as.derive(static_cast<std::uint64_t>(i));
        double v = 0.25 * fs + 0.5 * x[i] + r.gaussian(0.05 * fs);
        y[i] = std::clamp(v, 0.0, fs);
      }
      auto r = linagg::aggregate_regression(x, y, ctx, f.measure_n);
      double mx = 0.0, my = 0.0, mxy = 0.0, mxx = 0.0;
      for (int i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
        mxy += x[i] * y[i];
        mxx += x[i] * x[i];
      }
      mx /= n;
      my /= n;
      mxy /= n;
      mxx /= n;
      row.true_value = (mxy - mx * my) / (mxx - mx * mx);
      row.computed_value = r.value;
      break;
    }
    case FunctionKind::max:
    case FunctionKind::min: {
      std::vector<std::uint32_t> codes(n);
      for (int i = 0; i < n; ++i) codes[i] = quantize(x[i], res_spec).code;
      auto t = f.kind == FunctionKind::max ? bitagg::compute_max(codes, ctx)
                                           : bitagg::compute_min(codes, ctx);
      std::uint32_t truth = f.kind == FunctionKind::max
                                ? *std::max_element(codes.begin(), codes.end())
                                : *std::min_element(codes.begin(), codes.end());
      row.true_value = dequantize(truth, res_spec);
      row.computed_value = dequantize(t.resolved_code, res_spec);
      break;
    }
    case FunctionKind::percentile: {
      auto r = bitagg::compute_percentile(x, f.percentile_rank, ctx, f.prior);
      std::vector<std::uint32_t> codes(n);
      for (int i = 0; i < n; ++i) codes[i] = quantize(x[i], res_spec).code;
      std::sort(codes.begin(), codes.end());
      long k = std::clamp(
          static_cast<long>(std::ceil(f.percentile_rank * n)), 1L,
          static_cast<long>(n));
      row.true_value = dequantize(codes[k - 1], res_spec);
      row.computed_value = r.value;
      break;
    }
  }

  row.abs_error = std::abs(row.computed_value - row.true_value);
  fill_bits(row, row.true_value, row.computed_value, oc);
  row.repetitions_used = ctx.repetitions_used() + ctx.detection_slots_used();
  return row;
}

}  // namespace

SeededRng trial_rng(const ScenarioConfig& cfg, int n, double snr_db,
                    int trial) {
  SeededRng base(cfg.seed, streams::scenario);
  return base
      .derive(static_cast<std::uint64_t>(n),
              std::bit_cast<std::uint64_t>(snr_db),
              static_cast<std::uint64_t>(cfg.bits))
      .derive(static_cast<std::uint64_t>(cfg.function.kind),
              static_cast<std::uint64_t>(trial));
}

ScenarioResult run_scenario(const ScenarioConfig& cfg, int n, double snr_db,
                            ExecMode mode) {
  ScenarioResult out;
  out.n = n;
  out.snr_db = snr_db;
  out.bits = cfg.bits;
  out.kind = cfg.function.kind;
  out.seed = cfg.seed;
  out.running_depth = cfg.running_depth;
  out.plan = scenario_plan(cfg, n, snr_db);

  std::vector<double> weights;
  if (cfg.function.kind == FunctionKind::weighted_mean)
    weights = effective_weights(cfg.function, n);
  OutputCoding oc = output_coding(cfg, n, weights);
  out.output_lsb = oc.q.lsb();

  out.trials.resize(cfg.trials);
  std::atomic<bool> failed{false};
  std::exception_ptr err;

  if (mode == ExecMode::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < cfg.trials; ++t) {
      if (failed.load(std::memory_order_relaxed)) continue;
      try {
        out.trials[t] = run_one_trial(cfg, n, snr_db, out.plan, weights, oc, t);
      } catch (...) {
#pragma omp critical
        {
          if (!failed.exchange(true)) err = std::current_exception();
        }
      }
    }
  } else {
    for (int t = 0; t < cfg.trials; ++t)
      out.trials[t] = run_one_trial(cfg, n, snr_db, out.plan, weights, oc, t);
  }
  if (err) std::rethrow_exception(err);

  double se = 0.0;
  for (const TrialRow& r : out.trials) se += r.abs_error * r.abs_error;
  out.rms_error = std::sqrt(se / static_cast<double>(cfg.trials));
  return out;
}

std::vector<ScenarioResult> run_sweep(const ScenarioConfig& cfg,
                                      ExecMode mode) {
  std::vector<ScenarioResult> out;
  out.reserve(cfg.n_values.size() * cfg.snr_db_values.size());
  for (int n : cfg.n_values)
    for (double s : cfg.snr_db_values)
      out.push_back(run_scenario(cfg, n, s, mode));
  return out;
}

}  // namespace aircomp::harness
