#include "aircomp/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace aircomp {

LinkBudget LinkBudget::from_snr_db(double snr_db, double tx_power) {
  if (!(tx_power > 0.0))
    throw std::invalid_argument("tx_power must be positive");
  LinkBudget b;
  b.tx_power = tx_power;
  b.noise_power = tx_power / undb(snr_db);
  return b;
}

double LinkBudget::snr() const {
  if (noise_power == 0.0) return std::numeric_limits<double>::infinity();
  return tx_power / noise_power;
}

cplx calibrate(cplx h0, cplx g0) {
  if (std::abs(g0) == 0.0)
    throw std::domain_error("calibrate: reverse channel is zero");
  return h0 / g0;
}

std::vector<ChannelRealization> draw_channels(std::size_t n,
                                              const ChannelModelConfig& cfg,
                                              const SeededRng& rng) {
  if (cfg.kind == ChannelKind::rayleigh_clipped && !(cfg.magnitude_floor > 0.0))
    throw std::invalid_argument("magnitude_floor must be positive");
  std::vector<ChannelRealization> out(n);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i) {
    SeededRng r = rng.derive(streams::channel, i);
    double mag = 1.0;
    if (cfg.kind == ChannelKind::rayleigh_clipped) {
      // |h|^2 ~ Exp(1), so E|h|^2 = 1 before clipping.
      double u = r.uniform();
      mag = std::sqrt(-std::log(1.0 - u));
      if (mag < cfg.magnitude_floor) mag = cfg.magnitude_floor;
    }
    double theta = r.uniform(0.0, two_pi);
    double psi = r.uniform(0.0, two_pi);  // calibration-constant phase
    cplx h = std::polar(mag, theta);
    cplx k = std::polar(1.0, psi);
    out[i].forward = h;
    out[i].reverse = h / k;
    out[i].calib = calibrate(out[i].forward, out[i].reverse);
  }
  return out;
}

cplx add_noise(cplx x, double noise_power, SeededRng& rng) {
  if (noise_power == 0.0) return x;
  return x + rng.complex_gaussian(noise_power);
}

}  // namespace aircomp
