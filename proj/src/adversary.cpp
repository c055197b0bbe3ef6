#include "qsdc/adversary.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qsdc/errors.hpp"

namespace qsdc {

InterceptResendChannel InterceptResendChannel::make(
    const ProtocolParams& params, bool compensate, EveNoClickPolicy noclick) {
  InterceptResendChannel ch;
  ch.noclick = noclick;
  ch.bob_transmissivity = params.t_c;
  if (!compensate) return ch;
  try {
    const double t_prime =
        compensated_transmissivity(params, CompensationMethod::kClosedForm);
    if (t_prime > 1.0) {
      ch.compensation_infeasible = true;  // fall back to the honest channel
    } else {
      ch.bob_transmissivity = t_prime;
    }
  } catch (const InfeasibleError&) {
    ch.compensation_infeasible = true;
  }
  return ch;
}

ChannelOutcome eve_intercept_resend(const SlotRecord& slot,
                                    const ProtocolParams& params,
                                    const InterceptResendChannel& channel,
                                    ValueRange range, double noise_sigma,
                                    RandomStream& eve_rng,
                                    RandomStream& bob_rng) {
  ChannelOutcome out;
  // Eve's own readout at Alice's output.
  out.eve_slot = transmit_and_detect(slot, 1.0, range, noise_sigma, eve_rng);

  // What she re-emits: measured phase when she clicked, noclick policy
  // otherwise. Mean photon number is her coin flip between mu_s and mu_r.
  SlotRecord resent = slot;
  resent.mu = eve_rng.bernoulli(0.5) ? params.mu_s : params.mu_r;
  bool emit = true;
  if (!out.eve_slot.clicked) {
    switch (channel.noclick) {
      case EveNoClickPolicy::kExactPhase:
        break;  // ideal intercept measurement: phase already correct
      case EveNoClickPolicy::kRandomPhase:
        resent.phase = eve_rng.uniform(0.0, std::numbers::pi);
        break;
      case EveNoClickPolicy::kVacuum:
        emit = false;
        break;
    }
  }

  if (emit) {
    out.bob_slot = transmit_and_detect(resent, channel.bob_transmissivity,
                                       range, noise_sigma, bob_rng);
  } else {
    out.bob_slot = resent;
    out.bob_slot.mu = 0.0;
    out.bob_slot.clicked = false;
    out.bob_slot.measured_value.reset();
  }
  return out;
}

ChannelOutcome eve_beamsplitter(const SlotRecord& slot,
                                const ProtocolParams& params,
                                ValueRange range, double noise_sigma,
                                RandomStream& eve_rng, RandomStream& bob_rng) {
  ChannelOutcome out;
  // Tap ratio t_c toward Bob, then a lossless channel: Bob sees the honest
  // statistics. Eve holds the complementary (1 - t_c) fraction.
  out.bob_slot = transmit_and_detect(slot, params.t_c, range, noise_sigma,
                                     bob_rng);
  SlotRecord tapped = slot;
  tapped.mu = slot.mu * (1.0 - params.t_c);
  out.eve_slot = transmit_and_detect(tapped, 1.0, range, noise_sigma, eve_rng);
  out.eve_slot.mu = slot.mu;  // record the emitted mean, not the tap share
  return out;
}

ReconstructionResult eve_reconstruct(const EveRecord& record, double f_max,
                                     std::span<const SlotTag> disclosed_tags,
                                     double duration,
                                     double frequency_grid_step,
                                     const ReconstructionOptions& options) {
  if (record.eve_slots.size() != disclosed_tags.size()) {
    throw std::invalid_argument(
        "eve_reconstruct: tag list does not match slot list");
  }
  SampleSet samples;
  samples.duration = duration;
  for (std::size_t i = 0; i < record.eve_slots.size(); ++i) {
    const SlotRecord& s = record.eve_slots[i];
    if (disclosed_tags[i] == SlotTag::kSignal && s.clicked) {
      samples.points.push_back(SamplePoint{s.emit_time, *s.measured_value});
    }
  }
  return reconstruct_signal(samples, f_max, frequency_grid_step, options);
}

}  // namespace qsdc
