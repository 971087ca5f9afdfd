#include "aircomp/bitagg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace aircomp::bitagg {

std::uint32_t ones_complement(std::uint32_t code, int bits) {
  if (bits < 1 || bits > 24)
    throw std::invalid_argument("bits out of range [1,24]");
  std::uint32_t mask = (1u << bits) - 1u;
  if (code > mask) throw std::invalid_argument("code exceeds bit width");
  return ~code & mask;
}

namespace {

void check_codes(std::span<const std::uint32_t> codes, ProtocolContext& ctx) {
  if (codes.size() != ctx.fleet().size())
    throw std::invalid_argument("one code per sensor required");
  std::uint32_t mx = ctx.resolution().max_code();
  for (std::uint32_t c : codes)
    if (c > mx) throw std::invalid_argument("code exceeds resolution");
}

// MSB-first rounds over the given codes; with flip set, the transcript
// reports complemented bits (min runs on complemented codes).
BitRoundTranscript run_rounds(std::span<const std::uint32_t> codes,
                              ProtocolContext& ctx, bool flip) {
  check_codes(codes, ctx);
  int b = ctx.resolution().bits;
  BitRoundTranscript t;
  t.rounds.reserve(b);

  std::uint32_t resolved = 0;  // in the detection (possibly flipped) domain
  std::vector<std::uint32_t> transmitters;
  for (int k = b - 1; k >= 0; --k) {
    transmitters.clear();
    std::size_t active = 0;
    for (std::uint32_t i = 0; i < codes.size(); ++i) {
      if ((codes[i] >> (k + 1)) != (resolved >> (k + 1))) continue;
      ++active;
      if ((codes[i] >> k) & 1u) transmitters.push_back(i);
    }
    auto det = ctx.detect(transmitters);
    if (det.detected) resolved |= (1u << k);

    BitRoundRecord rec;
    rec.round = b - 1 - k;
    rec.bit_index = k;
    rec.active_count = active;
    rec.statistic = det.statistic;
    rec.threshold = det.threshold;
    rec.detected = det.detected;
    rec.bit = static_cast<int>(det.detected) ^ static_cast<int>(flip);
    t.rounds.push_back(rec);
  }
  t.resolved_code = flip ? ones_complement(resolved, b) : resolved;
  return t;
}

}  // namespace

BitRoundTranscript compute_max(std::span<const std::uint32_t> codes,
                               ProtocolContext& ctx) {
  return run_rounds(codes, ctx, false);
}

BitRoundTranscript compute_min(std::span<const std::uint32_t> codes,
                               ProtocolContext& ctx) {
  int b = ctx.resolution().bits;
  std::vector<std::uint32_t> cc(codes.size());
  for (std::size_t i = 0; i < codes.size(); ++i)
    cc[i] = ones_complement(codes[i], b);
  return run_rounds(cc, ctx, true);
}

namespace {

// Value interval whose quantised codes fall in [lo_code, hi_code].
linagg::Predicate code_interval(std::uint32_t lo_code, std::uint32_t hi_code,
                                const QuantizationSpec& q) {
  linagg::Predicate p;
  double lsb = q.lsb();
  if (lo_code > 0) p.lo = (static_cast<double>(lo_code) - 0.5) * lsb;
  if (hi_code < q.max_code())
    p.hi = (static_cast<double>(hi_code) + 0.5) * lsb;
  return p;
}

}  // namespace

PercentileResult compute_percentile(std::span<const double> values,
                                    double rank, ProtocolContext& ctx,
                                    PercentilePrior prior) {
  if (!(rank >= 0.0 && rank <= 1.0))
    throw std::invalid_argument("rank must lie in [0,1]");
  const QuantizationSpec& q = ctx.resolution();

  std::vector<std::uint32_t> codes(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    codes[i] = quantize(values[i], q).code;

  PercentileResult res;
  res.state.rank = rank;
  res.state.prior = prior;
  res.min_rounds = compute_min(codes, ctx);
  res.max_rounds = compute_max(codes, ctx);
  res.state.min_code = res.min_rounds.resolved_code;
  res.state.max_code = res.max_rounds.resolved_code;
  res.state.lo = std::min(res.state.min_code, res.state.max_code);
  res.state.hi = std::max(res.state.min_code, res.state.max_code);

  if (res.state.lo == res.state.hi) {
    res.code = res.state.lo;
    res.value = dequantize(res.code, q);
    return res;
  }

  auto run_count = [&](const linagg::Predicate& p) {
    auto c = linagg::aggregate_count(values, p, ctx);
    res.state.count_requests += 1;
    res.state.count_history.push_back(c.count);
    return c.count;
  };
  auto count_codes = [&](std::uint32_t a, std::uint32_t b) {
    return run_count(code_interval(a, b, q));
  };

  long total = run_count(linagg::Predicate::everything());
  if (total < 1) throw std::domain_error("percentile: empty count");
  res.state.total = total;
  res.state.target =
      std::clamp(static_cast<long>(std::ceil(rank * total)), 1L, total);

  std::uint32_t lo = res.state.lo, hi = res.state.hi;
  long below = 0, above = 0;
  // Interval rounds stay within the bisection budget: a proportional
  // split is only taken when even its worse side could still be finished
  // by halving within the rounds that remain.
  int interval_budget = q.bits + 1;
  int interval_rounds = 0;
  while (lo < hi) {
    long candidates = total - below - above;
    if (candidates < 1) break;  // counts contradict under heavy noise
    long want = std::clamp(res.state.target - below, 1L, candidates);

    int remaining = interval_budget - interval_rounds;
    std::uint32_t span = hi - lo + 1;
    std::uint32_t split = lo + (hi - lo) / 2;
    if (prior == PercentilePrior::uniform) {
      double frac = static_cast<double>(want) / static_cast<double>(candidates);
      double cells = std::round(static_cast<double>(span) * frac);
      long off = static_cast<long>(cells) - 1;
      off = std::clamp(off, 0L, static_cast<long>(span) - 2);
      std::uint32_t prop = lo + static_cast<std::uint32_t>(off);
      std::uint32_t worst = std::max(prop - lo + 1, hi - prop);
      int need = std::bit_width(worst - 1);
      if (need <= remaining - 1) split = prop;
    }
    ++interval_rounds;

    long cnt = count_codes(lo, split);
    if (below + cnt >= res.state.target) {
      hi = split;
      above = total - below - cnt;
    } else {
      below += cnt;
      lo = split + 1;
    }
  }

  res.state.lo = lo;
  res.state.hi = hi;
  res.state.below = below;
  res.state.above = above;
  res.code = lo;
  res.value = dequantize(res.code, q);
  return res;
}

}  // namespace aircomp::bitagg
