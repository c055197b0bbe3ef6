#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qsdc/adversary.hpp"
#include "qsdc/photonics.hpp"
#include "qsdc/protocol.hpp"
#include "qsdc/security.hpp"

namespace qsdc {

enum class OutputFormat { kText, kJson, kCsv };

// Flat run configuration: the union of the protocol, optical and session
// knobs plus adversary selection and output control. Parsed from key=value
// files and/or CLI flags; unknown keys are rejected by name.
struct RunConfig {
  ProtocolParams params;
  OpticalSetupParams setup;

  std::int64_t n_slots = 10000;
  std::uint64_t seed = 1;
  int n_seeds = 100;

  int n_components = 5;
  double amplitude_bound = 1.0;
  // 0 -> 32 periods of the slowest tone per session window.
  double tone_step = 0.0;

  // Auto range is +-2.5 * n_components * amplitude_bound, a public
  // worst-case bound so the receiver can decode without knowing s(t).
  bool value_range_auto = true;
  ValueRange value_range{-12.5, 12.5};

  ReconstructionThresholds thresholds;

  AdversaryKind adversary = AdversaryKind::kNone;
  bool compensate = false;
  std::uint64_t eve_seed = 0;
  EveNoClickPolicy eve_noclick = EveNoClickPolicy::kExactPhase;

  OutputFormat format = OutputFormat::kText;
  std::string out_dir;  // default: $QSDC_OUT_DIR or "."
};

// Set one key. Throws std::invalid_argument naming the key for unknown
// keys or unparseable values.
void apply_config_key(RunConfig& cfg, const std::string& key,
                      const std::string& value);

// Parse a flat key=value file over the given defaults. '#' starts a
// comment; blank lines are ignored.
RunConfig parse_config_file(const std::string& path, RunConfig base = {});

// Cross-field validation; resolves the auto value range. Throws
// std::invalid_argument naming the violated constraint.
void finalize_run_config(RunConfig& cfg);

// Canonical key=value block of the resolved config; parsing it back
// reproduces the config exactly.
std::string emit_config(const RunConfig& cfg);

// Shortest text form of a double that parses back to the same bits.
std::string format_double(double v);

SessionConfig session_config_from(const RunConfig& cfg);

const char* to_string(AdversaryKind kind);
const char* to_string(EveNoClickPolicy policy);
const char* to_string(OutputFormat format);

}  // namespace qsdc
