#pragma once

#include <cstdint>
#include <optional>

#include "qsdc/rng.hpp"

namespace qsdc {

// Knobs of the interferometric layer (pulse pair, fiber rings, single
// detector). Only lo_mean_photons and readout_noise_sigma feed the
// simulation math; the rest document the modeled setup and are validated.
struct OpticalSetupParams {
  double alice_tap = 0.10;       // fraction reflected into Alice's ring
  double bob_tap = 0.50;         // Bob's beam-splitter split
  double ring_delay_tau = 0.0;   // seconds; must stay below the pulse period
  double lo_mean_photons = 1e6;  // strong local-oscillator pulse
  double voa_attenuation = 1.0;  // power transmission of the VOA
  double readout_noise_sigma = 0.0;  // radians of additive phase noise
};

void validate_setup(const OpticalSetupParams& setup, double pulse_period);

enum class SlotTag { kSignal, kDecoy };

// Closed interval of sample values the phase modulator can carry.
struct ValueRange {
  double lo = -1.0;
  double hi = 1.0;
};

// One pulse-pair time slot, from Alice's choice through Bob's readout.
struct SlotRecord {
  std::int64_t index = 0;
  double emit_time = 0.0;  // index * T_p
  SlotTag tag = SlotTag::kSignal;
  double sample_value = 0.0;
  double phase = 0.0;  // radians in [0, pi]
  double mu = 0.0;     // mean photon number at the channel input
  bool clicked = false;
  std::optional<double> measured_value;  // present iff clicked
};

// Affine map of [range.lo, range.hi] onto [0, pi]; values outside the
// range are clamped first. The single-detector cosine readout cannot tell
// phi from -phi, which is why the codomain stops at pi.
double encode_phase(double sample_value, ValueRange range);

// Exact inverse of encode_phase on [0, pi]. Out-of-range phases are
// clamped; *clamped (when non-null) reports that.
double decode_phase(double phase, ValueRange range, bool* clamped = nullptr);

// Channel + detector for one slot: Bernoulli click with probability
// 1 - exp(-t_eff * mu); on a click the readout is the decoded phase plus
// optional Gaussian phase noise. Consumes draws only from rng.
SlotRecord transmit_and_detect(const SlotRecord& slot, double t_eff,
                               ValueRange range, double readout_noise_sigma,
                               RandomStream& rng);

// Classical mean level at the single detector when a strong pulse of
// lo_mean_photons interferes with a weak pulse of weak_mu at the given
// relative phase: lo/2 + weak/2 + sqrt(lo*weak)*cos(phase). Rendering aid
// only; per-shot quantum noise is out of scope.
double interference_trace(double phase, const OpticalSetupParams& setup,
                          double weak_mu);

}  // namespace qsdc
