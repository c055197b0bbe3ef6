#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qsdc/photonics.hpp"
#include "qsdc/reconstruct.hpp"
#include "qsdc/security.hpp"

namespace qsdc {

enum class AdversaryKind { kNone, kInterceptResend, kBeamSplitter };

// What an intercept/resend Eve emits toward Bob on slots where her own
// weak-pulse measurement produced no click. kExactPhase forwards the true
// phase (ideal intercept measurement, the analysis model most favorable to
// Eve and the one the rate equations assume); kRandomPhase substitutes a
// uniform phase in [0, pi]; kVacuum sends nothing.
enum class EveNoClickPolicy { kExactPhase, kRandomPhase, kVacuum };

struct AdversaryModel {
  AdversaryKind kind = AdversaryKind::kNone;
  bool compensate = false;  // intercept/resend only: present t'_c to Bob
  std::uint64_t eve_seed = 0;
  EveNoClickPolicy noclick = EveNoClickPolicy::kExactPhase;
};

// Eve's side of a session transcript.
struct EveRecord {
  std::vector<SlotRecord> eve_slots;  // her clicks and measured values
  std::optional<ReconstructionResult> eve_reconstruction;
  double effective_bob_channel = 0.0;  // t_c, t'_c, or 1.0 (lossless swap)
  bool compensation_infeasible = false;
};

// Per-session intercept/resend channel state, derived once.
struct InterceptResendChannel {
  double bob_transmissivity = 0.0;
  bool compensation_infeasible = false;
  EveNoClickPolicy noclick = EveNoClickPolicy::kExactPhase;

  // compensate = true solves the compensation condition; a root > 1 or no
  // root at all is physically unrealizable, so Eve falls back to t_c with
  // the infeasibility flag set.
  static InterceptResendChannel make(const ProtocolParams& params,
                                     bool compensate,
                                     EveNoClickPolicy noclick);
};

struct ChannelOutcome {
  SlotRecord bob_slot;
  SlotRecord eve_slot;
};

// Eve measures at Alice's output (unit transmissivity, click probability
// 1 - exp(-mu)), then re-emits toward Bob with mu drawn evenly from
// {mu_s, mu_r} through channel.bob_transmissivity.
ChannelOutcome eve_intercept_resend(const SlotRecord& slot,
                                    const ProtocolParams& params,
                                    const InterceptResendChannel& channel,
                                    ValueRange range, double noise_sigma,
                                    RandomStream& eve_rng,
                                    RandomStream& bob_rng);

// Eve keeps the (1 - t_c) tap and swaps in a lossless channel, so Bob's
// click statistics are those of the honest channel while Eve detects with
// exponent (1 - t_c) * mu. Both read the true phase when clicked.
ChannelOutcome eve_beamsplitter(const SlotRecord& slot,
                                const ProtocolParams& params,
                                ValueRange range, double noise_sigma,
                                RandomStream& eve_rng, RandomStream& bob_rng);

// Eve filters her clicked slots to the publicly disclosed SIGNAL tags and
// runs the same reconstruction Bob does. Empty sample set gives ok=false.
ReconstructionResult eve_reconstruct(const EveRecord& record, double f_max,
                                     std::span<const SlotTag> disclosed_tags,
                                     double duration,
                                     double frequency_grid_step,
                                     const ReconstructionOptions& options = {});

}  // namespace qsdc
