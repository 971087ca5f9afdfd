#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aircomp/linagg.hpp"
#include "aircomp/protocol.hpp"

namespace aircomp::bitagg {

std::uint32_t ones_complement(std::uint32_t code, int bits);

struct BitRoundRecord {
  int round = 0;      // 0 = first (most significant) round
  int bit_index = 0;  // bit position being resolved
  std::size_t active_count = 0;
  double statistic = 0.0;
  double threshold = 0.0;
  bool detected = false;
  int bit = 0;  // resolved bit value at bit_index
};

// Per-round log of a bitwise protocol run. Concatenating the bit fields
// most significant first reconstructs resolved_code.
struct BitRoundTranscript {
  std::vector<BitRoundRecord> rounds;
  std::uint32_t resolved_code = 0;
};

// Resolve the maximum of the sensors' codes, one bit per detection round,
// most significant bit first. In each round the sensors whose code still
// matches the resolved prefix and whose current bit is 1 transmit; a
// detection fixes the bit at 1 and silently drops the others out.
BitRoundTranscript compute_max(std::span<const std::uint32_t> codes,
                               ProtocolContext& ctx);

// Minimum via the same rounds on one's-complemented codes.
BitRoundTranscript compute_min(std::span<const std::uint32_t> codes,
                               ProtocolContext& ctx);

enum class PercentilePrior {
  none,     // bisect the candidate code interval
  uniform,  // split proportionally to the rank still to cover
};

struct PercentileSearchState {
  double rank = 0.5;
  std::uint32_t lo = 0, hi = 0;  // candidate code interval, inclusive
  std::uint32_t min_code = 0, max_code = 0;
  long total = 0;
  long target = 0;  // k-th smallest being located
  long below = 0;   // known count strictly under lo
  long above = 0;   // known count strictly over hi
  int count_requests = 0;
  std::vector<long> count_history;
  PercentilePrior prior = PercentilePrior::uniform;
};

struct PercentileResult {
  double value = 0.0;
  std::uint32_t code = 0;
  PercentileSearchState state;
  BitRoundTranscript min_rounds, max_rounds;
};

// Order statistic at the given rank (0 = min, 1 = max) on the quantised
// value grid: bitwise min/max bound the search interval, a total count
// fixes the target index, then counting queries narrow the interval to a
// single code.
PercentileResult compute_percentile(
    std::span<const double> values, double rank, ProtocolContext& ctx,
    PercentilePrior prior = PercentilePrior::uniform);

}  // namespace aircomp::bitagg
