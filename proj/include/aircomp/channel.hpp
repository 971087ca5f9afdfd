#pragma once

#include <vector>

#include "aircomp/core.hpp"

namespace aircomp {

// Power budget for one scenario. snr_db is the per-sensor link SNR at the
// cluster head: a lone unit-magnitude transmitter at full scale arrives with
// tx_power / noise_power = 10^(snr_db/10).
struct LinkBudget {
  double tx_power = 1.0;
  double noise_power = 0.0;

  static LinkBudget from_snr_db(double snr_db, double tx_power = 1.0);
  bool noiseless() const { return noise_power == 0.0; }
  double snr() const;
};

enum class ChannelKind {
  unit_modulus,      // |h| = 1, phase uniform
  rayleigh_clipped,  // Rayleigh magnitude, clipped below at magnitude_floor
};

struct ChannelModelConfig {
  ChannelKind kind = ChannelKind::unit_modulus;
  double magnitude_floor = 0.1;
  // Std dev (radians) of the per-repetition phase wander applied during
  // joint transmission. 0 keeps the block-fading assumption exact.
  double phase_drift_std = 0.0;
};

// One sensor's links for the duration of a request (block fading).
// forward is sensor -> cluster head, reverse is the opposite direction,
// and calib is the h/g ratio captured once at calibration time.
struct ChannelRealization {
  cplx forward;
  cplx reverse;
  cplx calib;
};

cplx calibrate(cplx h0, cplx g0);

std::vector<ChannelRealization> draw_channels(std::size_t n,
                                              const ChannelModelConfig& cfg,
                                              const SeededRng& rng);

cplx add_noise(cplx x, double noise_power, SeededRng& rng);

}  // namespace aircomp
