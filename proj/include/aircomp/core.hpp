#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace aircomp {

using cplx = std::complex<double>;

double db(double x);
double undb(double x_db);

bool is_finite(cplx v);

// Uniform code grid over [0, full_scale]. The all-ones code maps to
// full_scale exactly, so lsb = full_scale / (2^bits - 1).
struct QuantizationSpec {
  int bits = 8;
  double full_scale = 1.0;

  QuantizationSpec() = default;
  QuantizationSpec(int bits_, double full_scale_);

  std::uint32_t max_code() const { return (1u << bits) - 1u; }
  double lsb() const { return full_scale / static_cast<double>(max_code()); }
};

struct QuantizeOutcome {
  std::uint32_t code = 0;
  bool clamped = false;
};

// Nearest code, ties round up. Out-of-range values clamp to the grid ends.
QuantizeOutcome quantize(double value, const QuantizationSpec& spec);
double dequantize(std::uint32_t code, const QuantizationSpec& spec);

// Counted-stream RNG. A (seed, stream) pair identifies an independent draw
// sequence; derive() builds child streams from up to three labels, so the
// draws for one sensor/repetition/purpose never move when an unrelated
// dimension of the experiment changes.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  SeededRng derive(std::uint64_t a, std::uint64_t b = 0,
                   std::uint64_t c = 0) const;

  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  double gaussian(double stddev);
  // Circularly symmetric complex gaussian with E|z|^2 = power.
  cplx complex_gaussian(double power);
  std::uint64_t integer(std::uint64_t bound);  // [0, bound)

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

// Stream labels. Values are arbitrary but fixed: changing them changes
// every seeded result, so treat them as part of the output format.
namespace streams {
inline constexpr std::uint64_t sensor_values = 0x01;
inline constexpr std::uint64_t sensor_values_aux = 0x02;
inline constexpr std::uint64_t channel = 0x03;
inline constexpr std::uint64_t pilot = 0x04;
inline constexpr std::uint64_t rx_noise = 0x05;
inline constexpr std::uint64_t detect_noise = 0x06;
inline constexpr std::uint64_t phase_drift = 0x07;
inline constexpr std::uint64_t transmission = 0x08;
inline constexpr std::uint64_t detection = 0x09;
inline constexpr std::uint64_t protocol = 0x0a;
inline constexpr std::uint64_t scenario = 0x0b;
}  // namespace streams

}  // namespace aircomp
