#include "qsdc/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsdc {

namespace {

// Extra roles for session-internal synthesis seeds.
constexpr std::uint64_t kDecoySynthIndex = 1;
constexpr std::uint64_t kSecondDecoyIndex = 2;

ReconstructionOptions options_from(const SessionConfig& cfg) {
  ReconstructionOptions opt;
  opt.epsilon_residual = cfg.thresholds.epsilon_residual;
  opt.cond_floor = cfg.thresholds.cond_floor;
  return opt;
}

double grid_step_from(const SessionConfig& cfg, double duration) {
  return cfg.thresholds.frequency_grid_step > 0.0
             ? cfg.thresholds.frequency_grid_step
             : 1.0 / duration;
}

}  // namespace

void validate_session_config(const SessionConfig& cfg) {
  validate_params(cfg.params);
  validate_setup(cfg.setup, cfg.params.pulse_period);
  if (cfg.n_slots < 1) {
    throw std::invalid_argument("session: n_slots must be >= 1");
  }
  if (!(cfg.value_range.lo < cfg.value_range.hi)) {
    throw std::invalid_argument("session: degenerate value range");
  }
  if (cfg.thresholds.epsilon_residual <= 0.0 ||
      cfg.thresholds.match_threshold <= 0.0 ||
      cfg.thresholds.cond_floor <= 0.0 ||
      cfg.thresholds.frequency_grid_step < 0.0) {
    throw std::invalid_argument("session: thresholds must be positive");
  }
}

const char* to_string(VerdictOutcome outcome) {
  switch (outcome) {
    case VerdictOutcome::kAccept:
      return "ACCEPT";
    case VerdictOutcome::kAbortDecoyReconstructed:
      return "ABORT_DECOY_RECONSTRUCTED";
    case VerdictOutcome::kAbortSignalUnrecoverable:
      return "ABORT_SIGNAL_UNRECOVERABLE";
  }
  return "UNKNOWN";
}

SlotRecord alice_emit(std::int64_t slot_index, const BandlimitedSignal& s,
                      const BandlimitedSignal& r, const SessionConfig& cfg,
                      RandomStream& rng) {
  if (slot_index < 0 || slot_index >= cfg.n_slots) {
    throw std::invalid_argument("alice_emit: slot_index out of range");
  }
  SlotRecord slot;
  slot.index = slot_index;
  slot.emit_time = static_cast<double>(slot_index) * cfg.params.pulse_period;
  const bool pick_signal = rng.bernoulli(0.5);
  slot.tag = pick_signal ? SlotTag::kSignal : SlotTag::kDecoy;
  slot.mu = pick_signal ? cfg.params.mu_s : cfg.params.mu_r;
  slot.sample_value =
      eval_signal(pick_signal ? s : r, slot.emit_time);
  slot.phase = encode_phase(slot.sample_value, cfg.value_range);
  return slot;
}

SecurityVerdict bob_verdict(const ReconstructionResult& s_rec,
                            bool r_matched) {
  SecurityVerdict v;
  v.r_matched = r_matched;
  if (r_matched) {
    v.outcome = VerdictOutcome::kAbortDecoyReconstructed;
    v.notes = "decoy reconstructed and matched the disclosure";
  } else if (!s_rec.ok) {
    v.outcome = VerdictOutcome::kAbortSignalUnrecoverable;
    v.notes = "message reconstruction failed: " + s_rec.diagnostic;
  } else {
    v.outcome = VerdictOutcome::kAccept;
    v.notes = "message recovered, decoy not reconstructible";
  }
  return v;
}

std::vector<double> session_grid(const SessionConfig& cfg) {
  const double duration =
      static_cast<double>(cfg.n_slots) * cfg.params.pulse_period;
  const auto n = static_cast<std::size_t>(
      std::max(1024.0, std::ceil(8.0 * cfg.params.f_max * duration)));
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = duration * static_cast<double>(i) / static_cast<double>(n);
  }
  return grid;
}

double session_tone_step(const SessionConfig& cfg) {
  const double duration =
      static_cast<double>(cfg.n_slots) * cfg.params.pulse_period;
  return 32.0 / duration;
}

SessionTranscript run_session(const SessionConfig& cfg,
                              const BandlimitedSignal& s,
                              const BandlimitedSignal& r,
                              const AdversaryModel& adversary) {
  validate_session_config(cfg);
  validate_signal(s);
  validate_signal(r);
  if (s.f_max != r.f_max) {
    throw std::invalid_argument(
        "run_session: s and r must share the same f_max");
  }
  if (s.f_max != cfg.params.f_max) {
    throw std::invalid_argument(
        "run_session: signal band limit differs from params.f_max");
  }

  const double duration =
      static_cast<double>(cfg.n_slots) * cfg.params.pulse_period;
  const double noise = cfg.setup.readout_noise_sigma;

  SessionTranscript tr;
  tr.alice_slots.reserve(static_cast<std::size_t>(cfg.n_slots));
  tr.bob_slots.reserve(static_cast<std::size_t>(cfg.n_slots));
  tr.disclosure.tags.reserve(static_cast<std::size_t>(cfg.n_slots));

  InterceptResendChannel ir_channel;
  EveRecord eve;
  const bool has_eve = adversary.kind != AdversaryKind::kNone;
  if (adversary.kind == AdversaryKind::kInterceptResend) {
    ir_channel = InterceptResendChannel::make(cfg.params, adversary.compensate,
                                              adversary.noclick);
    eve.effective_bob_channel = ir_channel.bob_transmissivity;
    eve.compensation_infeasible = ir_channel.compensation_infeasible;
  } else if (adversary.kind == AdversaryKind::kBeamSplitter) {
    eve.effective_bob_channel = 1.0;  // lossless substitute channel
  }
  if (has_eve) {
    eve.eve_slots.reserve(static_cast<std::size_t>(cfg.n_slots));
  }

  for (std::int64_t i = 0; i < cfg.n_slots; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    RandomStream tag_rng = derive_stream(cfg.seed, idx, role::kTag);
    RandomStream bob_rng = derive_stream(cfg.seed, idx, role::kBobDetect);
    const SlotRecord emitted = alice_emit(i, s, r, cfg, tag_rng);
    tr.alice_slots.push_back(emitted);
    tr.disclosure.tags.push_back(emitted.tag);

    switch (adversary.kind) {
      case AdversaryKind::kNone: {
        tr.bob_slots.push_back(transmit_and_detect(
            emitted, cfg.params.t_c, cfg.value_range, noise, bob_rng));
        break;
      }
      case AdversaryKind::kInterceptResend: {
        RandomStream eve_rng =
            derive_stream(adversary.eve_seed, idx, role::kEveDetect);
        ChannelOutcome oc =
            eve_intercept_resend(emitted, cfg.params, ir_channel,
                                 cfg.value_range, noise, eve_rng, bob_rng);
        tr.bob_slots.push_back(oc.bob_slot);
        eve.eve_slots.push_back(oc.eve_slot);
        break;
      }
      case AdversaryKind::kBeamSplitter: {
        RandomStream eve_rng =
            derive_stream(adversary.eve_seed, idx, role::kEveDetect);
        ChannelOutcome oc = eve_beamsplitter(emitted, cfg.params,
                                             cfg.value_range, noise, eve_rng,
                                             bob_rng);
        tr.bob_slots.push_back(oc.bob_slot);
        eve.eve_slots.push_back(oc.eve_slot);
        break;
      }
    }
  }
  tr.disclosure.decoy = r;

  // Step 4/5: partition Bob's clicks by disclosed tag, reconstruct both.
  SampleSet signal_samples{.points = {}, .duration = duration};
  SampleSet decoy_samples{.points = {}, .duration = duration};
  for (std::size_t i = 0; i < tr.bob_slots.size(); ++i) {
    const SlotRecord& b = tr.bob_slots[i];
    if (!b.clicked) continue;
    SamplePoint pt{b.emit_time, *b.measured_value};
    if (tr.disclosure.tags[i] == SlotTag::kSignal) {
      signal_samples.points.push_back(pt);
    } else {
      decoy_samples.points.push_back(pt);
    }
  }

  const double step = grid_step_from(cfg, duration);
  const ReconstructionOptions opt = options_from(cfg);
  tr.s_reconstruction =
      reconstruct_signal(signal_samples, cfg.params.f_max, step, opt);
  tr.r_reconstruction =
      reconstruct_signal(decoy_samples, cfg.params.f_max, step, opt);

  const std::vector<double> grid = session_grid(cfg);
  const bool r_matched =
      compare_decoy(tr.r_reconstruction, r, grid,
                    cfg.thresholds.match_threshold);
  tr.verdict = bob_verdict(tr.s_reconstruction, r_matched);
  if (tr.s_reconstruction.ok) {
    const double rms = signal_rms(s);
    tr.verdict.s_rmse = signal_rmse(tr.s_reconstruction.estimate, s, grid) /
                        (rms > 0.0 ? rms : 1.0);
  }
  if (has_eve) {
    tr.eve_view = std::move(eve);
  }
  return tr;
}

TwoPhaseResult two_phase_transfer(const SessionConfig& cfg,
                                  const BandlimitedSignal& s,
                                  const AdversaryModel& adversary) {
  validate_session_config(cfg);
  TwoPhaseResult result;

  auto [s1, s2] = split_signal(s, cfg.seed);
  const double tone_step = session_tone_step(cfg);

  SessionConfig cfg1 = cfg;
  const BandlimitedSignal r1 = synthesize_signal(
      derive_stream(cfg.seed, kDecoySynthIndex, role::kSynthesis).next_u64(),
      cfg.params.f_max, 5, signal_rms(s) > 0.0 ? signal_rms(s) : 1.0,
      tone_step);
  result.transcripts.push_back(run_session(cfg1, s1, r1, adversary));
  if (result.transcripts.back().verdict.outcome != VerdictOutcome::kAccept) {
    result.outcome = result.transcripts.back().verdict.outcome;
    return result;
  }

  SessionConfig cfg2 = cfg;
  cfg2.seed = detail::mix64(cfg.seed + 0x517cc1b727220a95ull);
  AdversaryModel adv2 = adversary;
  adv2.eve_seed = detail::mix64(adversary.eve_seed + 0x6c62272e07bb0142ull);
  const BandlimitedSignal r2 = synthesize_signal(
      derive_stream(cfg.seed, kSecondDecoyIndex, role::kSynthesis).next_u64(),
      cfg.params.f_max, 5, signal_rms(s) > 0.0 ? signal_rms(s) : 1.0,
      tone_step);
  result.transcripts.push_back(run_session(cfg2, s2, r2, adv2));
  if (result.transcripts.back().verdict.outcome != VerdictOutcome::kAccept) {
    result.outcome = result.transcripts.back().verdict.outcome;
    return result;
  }

  result.outcome = VerdictOutcome::kAccept;
  result.recovered = signal_sum(result.transcripts[0].s_reconstruction.estimate,
                                result.transcripts[1].s_reconstruction.estimate);
  return result;
}

}  // namespace qsdc
