#include "aircomp/core.hpp"

#include <cmath>
#include <stdexcept>

namespace aircomp {

double db(double x) { return 10.0 * std::log10(x); }

double undb(double x_db) { return std::pow(10.0, x_db / 10.0); }

bool is_finite(cplx v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

QuantizationSpec::QuantizationSpec(int bits_, double full_scale_)
    : bits(bits_), full_scale(full_scale_) {
  if (bits < 1 || bits > 24)
    throw std::invalid_argument("quantization bits out of range [1,24]");
  if (!(full_scale > 0.0) || !std::isfinite(full_scale))
    throw std::invalid_argument("quantization full_scale must be positive");
}

QuantizeOutcome quantize(double value, const QuantizationSpec& spec) {
  QuantizeOutcome out;
  double scaled = std::floor(value / spec.lsb() + 0.5);
  if (scaled < 0.0) {
    out.code = 0;
    out.clamped = true;
  } else if (scaled > static_cast<double>(spec.max_code())) {
    out.code = spec.max_code();
    out.clamped = true;
  } else {
    out.code = static_cast<std::uint32_t>(scaled);
  }
  return out;
}

double dequantize(std::uint32_t code, const QuantizationSpec& spec) {
  return static_cast<double>(code) * spec.lsb();
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed),
      stream_(stream),
      engine_(splitmix64(seed ^ splitmix64(stream))) {}

SeededRng SeededRng::derive(std::uint64_t a, std::uint64_t b,
                            std::uint64_t c) const {
  std::uint64_t s = splitmix64(stream_ ^ splitmix64(a));
  s = splitmix64(s ^ splitmix64(b));
  s = splitmix64(s ^ splitmix64(c));
  return SeededRng(seed_, s);
}

double SeededRng::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

double SeededRng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double SeededRng::gaussian(double stddev) {
  if (stddev == 0.0) return 0.0;
  return std::normal_distribution<double>(0.0, stddev)(engine_);
}

cplx SeededRng::complex_gaussian(double power) {
  if (power == 0.0) return {0.0, 0.0};
  double s = std::sqrt(power / 2.0);
  std::normal_distribution<double> d(0.0, s);
  double re = d(engine_);
  double im = d(engine_);
  return {re, im};
}

std::uint64_t SeededRng::integer(std::uint64_t bound) {
  return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
}

}  // namespace aircomp
