#include "aircomp/linagg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace aircomp::linagg {

namespace {

// Affine map from [lo, hi] onto the transmit range [0, 1].
struct UnitMap {
  double lo = 0.0;
  double hi = 1.0;

  double forward(double v, int& clamps) const {
    double u = (v - lo) / (hi - lo);
    if (u < 0.0) {
      u = 0.0;
      ++clamps;
    } else if (u > 1.0) {
      u = 1.0;
      ++clamps;
    }
    return u;
  }
  // Invert a sum of n mapped values.
  double back_sum(double s, double n) const { return s * (hi - lo) + n * lo; }
};

struct Tracker {
  ProtocolContext& ctx;
  Diagnostics diag;
  int tx0, rep0;

  explicit Tracker(ProtocolContext& c) : ctx(c) {
    tx0 = c.transmissions_used();
    rep0 = c.repetitions_used();
  }
  void absorb(const phy::JointRxResult& r) {
    diag.imag_residual = std::max(diag.imag_residual, std::abs(r.imag_residual));
    diag.tx_energy += r.tx_energy;
  }
  Diagnostics finish() {
    diag.transmissions = ctx.transmissions_used() - tx0;
    diag.repetitions = ctx.repetitions_used() - rep0;
    return diag;
  }
};

// One mapped joint transmission from every sensor.
phy::JointRxResult send_all(std::span<const double> raw, const UnitMap& map,
                            ProtocolContext& ctx, Tracker& trk,
                            bool record_running = false) {
  std::vector<double> u(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    u[i] = map.forward(raw[i], trk.diag.clamp_count);
  auto r = ctx.transmit(u, ctx.all_sensors(), record_running);
  trk.absorb(r);
  return r;
}

long run_count(std::span<const double> values, const Predicate& pred,
               ProtocolContext& ctx, Tracker& trk, double* raw_out) {
  std::vector<std::uint32_t> participants;
  participants.reserve(values.size());
  for (std::uint32_t i = 0; i < values.size(); ++i)
    if (pred.contains(values[i])) participants.push_back(i);

  std::vector<double> ones(values.size(), 1.0);
  auto r = ctx.transmit(ones, participants, false);
  trk.absorb(r);
  if (raw_out) *raw_out = r.value;
  long n = static_cast<long>(values.size());
  long c = std::lround(r.value);
  return std::clamp(c, 0L, n);
}

int resolve_n(std::span<const double> values, ProtocolContext& ctx,
              Tracker& trk, bool measure) {
  if (!measure) return static_cast<int>(values.size());
  trk.diag.n_measured = true;
  long c = run_count(values, Predicate::everything(), ctx, trk, nullptr);
  if (c < 1) throw std::domain_error("measured cluster size is zero");
  return static_cast<int>(c);
}

}  // namespace

AggregateResult aggregate_sum(std::span<const double> values,
                              ProtocolContext& ctx, bool record_running) {
  Tracker trk(ctx);
  double fs = ctx.resolution().full_scale;
  UnitMap map{0.0, fs};
  auto r = send_all(values, map, ctx, trk, record_running);
  double n = static_cast<double>(values.size());

  AggregateResult out;
  out.value = map.back_sum(r.value, n);
  out.raw_moments = {out.value};
  if (record_running) {
    out.running.resize(r.running.size());
    for (std::size_t k = 0; k < r.running.size(); ++k)
      out.running[k] = map.back_sum(r.running[k], n);
  }
  out.diag = trk.finish();
  out.diag.n_used = static_cast<int>(values.size());
  return out;
}

AggregateResult aggregate_mean(std::span<const double> values,
                               ProtocolContext& ctx, bool measure_n) {
  Tracker trk(ctx);
  int n_used = resolve_n(values, ctx, trk, measure_n);
  double fs = ctx.resolution().full_scale;
  UnitMap map{0.0, fs};
  auto r = send_all(values, map, ctx, trk);
  double sum = map.back_sum(r.value, static_cast<double>(values.size()));

  AggregateResult out;
  out.value = sum / static_cast<double>(n_used);
  out.raw_moments = {out.value};
  out.diag = trk.finish();
  out.diag.n_used = n_used;
  return out;
}

AggregateResult aggregate_geometric_mean(std::span<const double> values,
                                         ProtocolContext& ctx,
                                         double log_floor) {
  if (!(log_floor > 0.0))
    throw std::invalid_argument("log_floor must be positive");
  double fs = ctx.resolution().full_scale;
  if (!(fs > log_floor))
    throw std::invalid_argument("full_scale must exceed log_floor");
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!(values[i] >= log_floor))
      throw std::domain_error("geometric mean: sensor " + std::to_string(i) +
                              " value below log floor");

  Tracker trk(ctx);
  std::vector<double> logs(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    logs[i] = std::log(values[i]);
  UnitMap map{std::log(log_floor), std::log(fs)};
  auto r = send_all(logs, map, ctx, trk);
  double n = static_cast<double>(values.size());
  double mean_log = map.back_sum(r.value, n) / n;

  AggregateResult out;
  out.value = std::exp(mean_log);
  out.raw_moments = {mean_log};
  out.diag = trk.finish();
  out.diag.n_used = static_cast<int>(values.size());
  return out;
}

AggregateResult aggregate_weighted_mean(std::span<const double> values,
                                        std::span<const double> weights,
                                        bool normalize, ProtocolContext& ctx) {
  if (values.size() != weights.size())
    throw std::invalid_argument("weights size mismatch");
  double fs = ctx.resolution().full_scale;

  double plo = 0.0, phi = 0.0;
  double wtot = 0.0;
  for (double w : weights) {
    plo = std::min(plo, w * fs);
    phi = std::max(phi, w * fs);
    wtot += w;
  }
  if (normalize && wtot == 0.0)
    throw std::invalid_argument("weights sum to zero");

  AggregateResult out;
  Tracker trk(ctx);
  if (phi == plo) {  // every weight is zero
    out.value = 0.0;
    out.raw_moments = {0.0, wtot};
    out.diag = trk.finish();
    out.diag.n_used = static_cast<int>(values.size());
    return out;
  }

  std::vector<double> prods(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    prods[i] = weights[i] * values[i];
  UnitMap map{plo, phi};
  auto r = send_all(prods, map, ctx, trk);
  double wsum = map.back_sum(r.value, static_cast<double>(values.size()));

  out.value = normalize ? wsum / wtot : wsum;
  out.raw_moments = {wsum, wtot};
  out.diag = trk.finish();
  out.diag.n_used = static_cast<int>(values.size());
  return out;
}

CountResult aggregate_count(std::span<const double> values,
                            const Predicate& pred, ProtocolContext& ctx) {
  Tracker trk(ctx);
  CountResult out;
  out.count = run_count(values, pred, ctx, trk, &out.raw);
  out.diag = trk.finish();
  out.diag.n_used = static_cast<int>(values.size());
  return out;
}

AggregateResult aggregate_variance(std::span<const double> values,
                                   ProtocolContext& ctx, bool measure_n) {
  Tracker trk(ctx);
  int n_used = resolve_n(values, ctx, trk, measure_n);
  double fs = ctx.resolution().full_scale;
  double n = static_cast<double>(values.size());

  UnitMap vmap{0.0, fs};
  auto r1 = send_all(values, vmap, ctx, trk);
  double mean = vmap.back_sum(r1.value, n) / n_used;

  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) sq[i] = values[i] * values[i];
  UnitMap smap{0.0, fs * fs};
  auto r2 = send_all(sq, smap, ctx, trk);
  double mean_sq = smap.back_sum(r2.value, n) / n_used;

  AggregateResult out;
  out.raw_moments = {mean, mean_sq};
  out.value = mean_sq - mean * mean;
  bool clamped = false;
  if (out.value < 0.0) {
    out.value = 0.0;
    clamped = true;
  }
  out.diag = trk.finish();
  out.diag.variance_clamped = clamped;
  out.diag.n_used = n_used;
  return out;
}

AggregateResult aggregate_regression(std::span<const double> xs,
                                     std::span<const double> ys,
                                     ProtocolContext& ctx, bool measure_n,
                                     double degenerate_tol) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("regression inputs size mismatch");
  Tracker trk(ctx);
  int n_used = resolve_n(xs, ctx, trk, measure_n);
  double fs = ctx.resolution().full_scale;
  double n = static_cast<double>(xs.size());

  UnitMap vmap{0.0, fs};
  UnitMap smap{0.0, fs * fs};

  auto rx = send_all(xs, vmap, ctx, trk);
  auto ry = send_all(ys, vmap, ctx, trk);

  std::vector<double> xy(xs.size()), xx(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xy[i] = xs[i] * ys[i];
    xx[i] = xs[i] * xs[i];
  }
  auto rxy = send_all(xy, smap, ctx, trk);
  auto rxx = send_all(xx, smap, ctx, trk);

  double mean_x = vmap.back_sum(rx.value, n) / n_used;
  double mean_y = vmap.back_sum(ry.value, n) / n_used;
  double mean_xy = smap.back_sum(rxy.value, n) / n_used;
  double mean_xsq = smap.back_sum(rxx.value, n) / n_used;

  double denom = mean_xsq - mean_x * mean_x;
  if (std::abs(denom) <= degenerate_tol)
    throw std::domain_error("regression design is degenerate");

  AggregateResult out;
  out.raw_moments = {mean_x, mean_y, mean_xy, mean_xsq};
  out.value = (mean_xy - mean_x * mean_y) / denom;
  out.intercept = mean_y - out.value * mean_x;
  out.diag = trk.finish();
  out.diag.n_used = n_used;
  return out;
}

}  // namespace aircomp::linagg
