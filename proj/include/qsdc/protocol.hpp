#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsdc/adversary.hpp"
#include "qsdc/photonics.hpp"
#include "qsdc/reconstruct.hpp"
#include "qsdc/security.hpp"
#include "qsdc/signal.hpp"

namespace qsdc {

// Reconstruction thresholds a session may override; zeros mean "derive".
struct ReconstructionThresholds {
  double epsilon_residual = 1e-3;
  double match_threshold = 0.05;
  double cond_floor = 1e-5;
  // 0 -> 1/duration, the Fourier resolution of the session window.
  double frequency_grid_step = 0.0;
};

struct SessionConfig {
  ProtocolParams params;
  OpticalSetupParams setup;
  std::int64_t n_slots = 0;
  std::uint64_t seed = 0;
  ValueRange value_range{-1.0, 1.0};
  ReconstructionThresholds thresholds;
};

void validate_session_config(const SessionConfig& cfg);

struct Disclosure {
  std::vector<SlotTag> tags;  // slot-for-slot copy of Alice's choices
  BandlimitedSignal decoy;    // the full r(t)
};

enum class VerdictOutcome {
  kAccept,
  kAbortDecoyReconstructed,
  kAbortSignalUnrecoverable,
};

const char* to_string(VerdictOutcome outcome);

struct SecurityVerdict {
  VerdictOutcome outcome = VerdictOutcome::kAbortSignalUnrecoverable;
  // rmse(estimate, true s) / rms(s); simulator-side oracle metric, present
  // only when the s reconstruction succeeded.
  std::optional<double> s_rmse;
  bool r_matched = false;
  std::string notes;
};

struct SessionTranscript {
  std::vector<SlotRecord> alice_slots;  // ground truth
  std::vector<SlotRecord> bob_slots;    // post-channel
  Disclosure disclosure;
  ReconstructionResult s_reconstruction;
  ReconstructionResult r_reconstruction;
  SecurityVerdict verdict;
  std::optional<EveRecord> eve_view;
};

// Step 2: fair coin between a sample of s (mu_s) and a sample of r (mu_r),
// evaluated at slot_index * T_p and phase-encoded.
SlotRecord alice_emit(std::int64_t slot_index, const BandlimitedSignal& s,
                      const BandlimitedSignal& r, const SessionConfig& cfg,
                      RandomStream& rng);

// Decoy check first: it is the explicit eavesdropping alarm. Then the
// message must be recoverable.
SecurityVerdict bob_verdict(const ReconstructionResult& s_rec, bool r_matched);

// Steps 1-5 end to end through the configured channel. Deterministic in
// cfg.seed and the adversary's eve_seed.
SessionTranscript run_session(const SessionConfig& cfg,
                              const BandlimitedSignal& s,
                              const BandlimitedSignal& r,
                              const AdversaryModel& adversary);

struct TwoPhaseResult {
  VerdictOutcome outcome = VerdictOutcome::kAbortSignalUnrecoverable;
  std::optional<BandlimitedSignal> recovered;
  std::vector<SessionTranscript> transcripts;  // length 1 on first abort
};

// Splits s additively, sends s1, and only on ACCEPT sends s2; on double
// ACCEPT the recovered message is the sum of both reconstructions. Decoy
// signals are synthesized per session from the config seed.
TwoPhaseResult two_phase_transfer(const SessionConfig& cfg,
                                  const BandlimitedSignal& s,
                                  const AdversaryModel& adversary);

// Uniform comparison grid for session-level RMSE checks: 8 points per
// period of f_max across the session window.
std::vector<double> session_grid(const SessionConfig& cfg);

// Frequency step used when synthesizing session signals so the slowest
// possible tone still has 32 periods inside the window.
double session_tone_step(const SessionConfig& cfg);

}  // namespace qsdc
