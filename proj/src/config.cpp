#include "qsdc/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace qsdc {

namespace {

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key +
                                "': not a number: '" + value + "'");
  }
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  std::int64_t v = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw std::invalid_argument("config key '" + key +
                                "': not an integer: '" + value + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw std::invalid_argument("config key '" + key +
                                "': not an unsigned integer: '" + value + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw std::invalid_argument("config key '" + key +
                              "': expected true/false: '" + value + "'");
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

const char* to_string(AdversaryKind kind) {
  switch (kind) {
    case AdversaryKind::kNone:
      return "none";
    case AdversaryKind::kInterceptResend:
      return "intercept-resend";
    case AdversaryKind::kBeamSplitter:
      return "beam-splitter";
  }
  return "unknown";
}

const char* to_string(EveNoClickPolicy policy) {
  switch (policy) {
    case EveNoClickPolicy::kExactPhase:
      return "exact-phase";
    case EveNoClickPolicy::kRandomPhase:
      return "random-phase";
    case EveNoClickPolicy::kVacuum:
      return "vacuum";
  }
  return "unknown";
}

const char* to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::kText:
      return "text";
    case OutputFormat::kJson:
      return "json";
    case OutputFormat::kCsv:
      return "csv";
  }
  return "unknown";
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

void apply_config_key(RunConfig& cfg, const std::string& key,
                      const std::string& value) {
  if (key == "mu_s") {
    cfg.params.mu_s = parse_double(key, value);
  } else if (key == "mu_r") {
    cfg.params.mu_r = parse_double(key, value);
  } else if (key == "t_c") {
    cfg.params.t_c = parse_double(key, value);
  } else if (key == "f_max") {
    cfg.params.f_max = parse_double(key, value);
  } else if (key == "pulse_period") {
    cfg.params.pulse_period = parse_double(key, value);
  } else if (key == "rate_over_fmax") {
    // Convenience alias: 1/T_p as a multiple of f_max.
    const double x = parse_double(key, value);
    if (!(x > 0.0) || !(cfg.params.f_max > 0.0)) {
      throw std::invalid_argument(
          "config key 'rate_over_fmax': requires positive value and f_max "
          "set beforehand");
    }
    cfg.params.pulse_period = 1.0 / (x * cfg.params.f_max);
  } else if (key == "rate_prefactor") {
    cfg.params.rate_prefactor = parse_double(key, value);
  } else if (key == "f_sub") {
    if (value == "none") {
      cfg.params.f_sub.reset();
    } else {
      cfg.params.f_sub = parse_double(key, value);
    }
  } else if (key == "alice_tap") {
    cfg.setup.alice_tap = parse_double(key, value);
  } else if (key == "bob_tap") {
    cfg.setup.bob_tap = parse_double(key, value);
  } else if (key == "ring_delay_tau") {
    cfg.setup.ring_delay_tau = parse_double(key, value);
  } else if (key == "lo_mean_photons") {
    cfg.setup.lo_mean_photons = parse_double(key, value);
  } else if (key == "voa_attenuation") {
    cfg.setup.voa_attenuation = parse_double(key, value);
  } else if (key == "readout_noise_sigma") {
    cfg.setup.readout_noise_sigma = parse_double(key, value);
  } else if (key == "n_slots") {
    cfg.n_slots = parse_int(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_u64(key, value);
  } else if (key == "n_seeds") {
    cfg.n_seeds = static_cast<int>(parse_int(key, value));
  } else if (key == "n_components") {
    cfg.n_components = static_cast<int>(parse_int(key, value));
  } else if (key == "amplitude_bound") {
    cfg.amplitude_bound = parse_double(key, value);
  } else if (key == "tone_step") {
    cfg.tone_step = parse_double(key, value);
  } else if (key == "value_lo") {
    cfg.value_range.lo = parse_double(key, value);
    cfg.value_range_auto = false;
  } else if (key == "value_hi") {
    cfg.value_range.hi = parse_double(key, value);
    cfg.value_range_auto = false;
  } else if (key == "eps_res") {
    cfg.thresholds.epsilon_residual = parse_double(key, value);
  } else if (key == "match_threshold") {
    cfg.thresholds.match_threshold = parse_double(key, value);
  } else if (key == "cond_floor") {
    cfg.thresholds.cond_floor = parse_double(key, value);
  } else if (key == "freq_grid_step") {
    cfg.thresholds.frequency_grid_step = parse_double(key, value);
  } else if (key == "adversary") {
    if (value == "none") {
      cfg.adversary = AdversaryKind::kNone;
    } else if (value == "intercept-resend") {
      cfg.adversary = AdversaryKind::kInterceptResend;
    } else if (value == "beam-splitter") {
      cfg.adversary = AdversaryKind::kBeamSplitter;
    } else {
      throw std::invalid_argument(
          "config key 'adversary': expected none|intercept-resend|"
          "beam-splitter, got '" + value + "'");
    }
  } else if (key == "compensate") {
    cfg.compensate = parse_bool(key, value);
  } else if (key == "eve_seed") {
    cfg.eve_seed = parse_u64(key, value);
  } else if (key == "eve_noclick") {
    if (value == "exact-phase") {
      cfg.eve_noclick = EveNoClickPolicy::kExactPhase;
    } else if (value == "random-phase") {
      cfg.eve_noclick = EveNoClickPolicy::kRandomPhase;
    } else if (value == "vacuum") {
      cfg.eve_noclick = EveNoClickPolicy::kVacuum;
    } else {
      throw std::invalid_argument(
          "config key 'eve_noclick': expected exact-phase|random-phase|"
          "vacuum, got '" + value + "'");
    }
  } else if (key == "format") {
    if (value == "text") {
      cfg.format = OutputFormat::kText;
    } else if (value == "json") {
      cfg.format = OutputFormat::kJson;
    } else if (value == "csv") {
      cfg.format = OutputFormat::kCsv;
    } else {
      throw std::invalid_argument(
          "config key 'format': expected text|json|csv, got '" + value + "'");
    }
  } else if (key == "out_dir") {
    cfg.out_dir = value;
  } else {
    throw std::invalid_argument("unknown config key: '" + key + "'");
  }
}

RunConfig parse_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open config file: " + path);
  }
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key=value");
    }
    apply_config_key(base, trim(line.substr(0, eq)),
                     trim(line.substr(eq + 1)));
  }
  return base;
}

void finalize_run_config(RunConfig& cfg) {
  validate_params(cfg.params);
  validate_setup(cfg.setup, cfg.params.pulse_period);
  if (cfg.n_slots < 1) {
    throw std::invalid_argument("config key 'n_slots': must be >= 1");
  }
  if (cfg.n_seeds < 1) {
    throw std::invalid_argument("config key 'n_seeds': must be >= 1");
  }
  if (cfg.n_components < 1) {
    throw std::invalid_argument("config key 'n_components': must be >= 1");
  }
  if (!(cfg.amplitude_bound > 0.0)) {
    throw std::invalid_argument("config key 'amplitude_bound': must be > 0");
  }
  if (cfg.tone_step < 0.0) {
    throw std::invalid_argument("config key 'tone_step': must be >= 0");
  }
  if (cfg.value_range_auto) {
    const double bound = 2.5 * cfg.n_components * cfg.amplitude_bound;
    cfg.value_range = ValueRange{-bound, bound};
    cfg.value_range_auto = false;
  }
  if (!(cfg.value_range.lo < cfg.value_range.hi)) {
    throw std::invalid_argument(
        "config keys 'value_lo'/'value_hi': require value_lo < value_hi");
  }
  if (!(cfg.thresholds.epsilon_residual > 0.0)) {
    throw std::invalid_argument("config key 'eps_res': must be > 0");
  }
  if (!(cfg.thresholds.match_threshold > 0.0)) {
    throw std::invalid_argument("config key 'match_threshold': must be > 0");
  }
  if (!(cfg.thresholds.cond_floor > 0.0)) {
    throw std::invalid_argument("config key 'cond_floor': must be > 0");
  }
  if (cfg.thresholds.frequency_grid_step < 0.0) {
    throw std::invalid_argument("config key 'freq_grid_step': must be >= 0");
  }
  if (cfg.out_dir.empty()) {
    const char* env = std::getenv("QSDC_OUT_DIR");
    cfg.out_dir = (env != nullptr && *env != '\0') ? env : ".";
  }
}

std::string emit_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "mu_s=" << format_double(cfg.params.mu_s) << "\n"
      << "mu_r=" << format_double(cfg.params.mu_r) << "\n"
      << "t_c=" << format_double(cfg.params.t_c) << "\n"
      << "f_max=" << format_double(cfg.params.f_max) << "\n"
      << "pulse_period=" << format_double(cfg.params.pulse_period) << "\n"
      << "rate_prefactor=" << format_double(cfg.params.rate_prefactor) << "\n"
      << "f_sub="
      << (cfg.params.f_sub ? format_double(*cfg.params.f_sub) : "none")
      << "\n"
      << "alice_tap=" << format_double(cfg.setup.alice_tap) << "\n"
      << "bob_tap=" << format_double(cfg.setup.bob_tap) << "\n"
      << "ring_delay_tau=" << format_double(cfg.setup.ring_delay_tau) << "\n"
      << "lo_mean_photons=" << format_double(cfg.setup.lo_mean_photons)
      << "\n"
      << "voa_attenuation=" << format_double(cfg.setup.voa_attenuation)
      << "\n"
      << "readout_noise_sigma="
      << format_double(cfg.setup.readout_noise_sigma) << "\n"
      << "n_slots=" << cfg.n_slots << "\n"
      << "seed=" << cfg.seed << "\n"
      << "n_seeds=" << cfg.n_seeds << "\n"
      << "n_components=" << cfg.n_components << "\n"
      << "amplitude_bound=" << format_double(cfg.amplitude_bound) << "\n"
      << "tone_step=" << format_double(cfg.tone_step) << "\n"
      << "value_lo=" << format_double(cfg.value_range.lo) << "\n"
      << "value_hi=" << format_double(cfg.value_range.hi) << "\n"
      << "eps_res=" << format_double(cfg.thresholds.epsilon_residual) << "\n"
      << "match_threshold="
      << format_double(cfg.thresholds.match_threshold) << "\n"
      << "cond_floor=" << format_double(cfg.thresholds.cond_floor) << "\n"
      << "freq_grid_step="
      << format_double(cfg.thresholds.frequency_grid_step) << "\n"
      << "adversary=" << to_string(cfg.adversary) << "\n"
      << "compensate=" << (cfg.compensate ? "true" : "false") << "\n"
      << "eve_seed=" << cfg.eve_seed << "\n"
      << "eve_noclick=" << to_string(cfg.eve_noclick) << "\n"
      << "format=" << to_string(cfg.format) << "\n"
      << "out_dir=" << cfg.out_dir << "\n";
  return out.str();
}

SessionConfig session_config_from(const RunConfig& cfg) {
  SessionConfig sc;
  sc.params = cfg.params;
  sc.setup = cfg.setup;
  sc.n_slots = cfg.n_slots;
  sc.seed = cfg.seed;
  sc.value_range = cfg.value_range;
  sc.thresholds = cfg.thresholds;
  return sc;
}

}  // namespace qsdc
