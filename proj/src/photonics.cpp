#include "qsdc/photonics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qsdc/security.hpp"

namespace qsdc {

void validate_setup(const OpticalSetupParams& setup, double pulse_period) {
  if (!(setup.alice_tap > 0.0) || !(setup.alice_tap < 1.0)) {
    throw std::invalid_argument("setup: alice_tap must be in (0, 1)");
  }
  if (!(setup.bob_tap > 0.0) || !(setup.bob_tap < 1.0)) {
    throw std::invalid_argument("setup: bob_tap must be in (0, 1)");
  }
  if (!(setup.ring_delay_tau >= 0.0) || setup.ring_delay_tau >= pulse_period) {
    throw std::invalid_argument("setup: ring_delay_tau must be in [0, T_p)");
  }
  if (!(setup.lo_mean_photons > 0.0)) {
    throw std::invalid_argument("setup: lo_mean_photons must be > 0");
  }
  if (!(setup.voa_attenuation > 0.0) || !(setup.voa_attenuation <= 1.0)) {
    throw std::invalid_argument("setup: voa_attenuation must be in (0, 1]");
  }
  if (!(setup.readout_noise_sigma >= 0.0)) {
    throw std::invalid_argument("setup: readout_noise_sigma must be >= 0");
  }
}

double encode_phase(double sample_value, ValueRange range) {
  if (!(range.lo < range.hi)) {
    throw std::invalid_argument("encode_phase: degenerate value range");
  }
  const double v = std::clamp(sample_value, range.lo, range.hi);
  return std::numbers::pi * (v - range.lo) / (range.hi - range.lo);
}

double decode_phase(double phase, ValueRange range, bool* clamped) {
  if (!(range.lo < range.hi)) {
    throw std::invalid_argument("decode_phase: degenerate value range");
  }
  const double clipped = std::clamp(phase, 0.0, std::numbers::pi);
  if (clamped != nullptr) {
    *clamped = clipped != phase;
  }
  return range.lo + (range.hi - range.lo) * clipped / std::numbers::pi;
}

SlotRecord transmit_and_detect(const SlotRecord& slot, double t_eff,
                               ValueRange range, double readout_noise_sigma,
                               RandomStream& rng) {
  SlotRecord out = slot;
  out.clicked = rng.bernoulli(click_probability(t_eff, slot.mu));
  if (out.clicked) {
    double phase = slot.phase;
    if (readout_noise_sigma > 0.0) {
      phase += readout_noise_sigma * rng.gaussian();
    }
    out.measured_value = decode_phase(phase, range);
  } else {
    out.measured_value.reset();
  }
  return out;
}

double interference_trace(double phase, const OpticalSetupParams& setup,
                          double weak_mu) {
  if (!(weak_mu >= 0.0)) {
    throw std::invalid_argument("interference_trace: weak_mu must be >= 0");
  }
  const double lo = setup.lo_mean_photons;
  return 0.5 * lo + 0.5 * weak_mu + std::sqrt(lo * weak_mu) * std::cos(phase);
}

}  // namespace qsdc
