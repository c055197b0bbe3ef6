#include "qsdc/signal.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>

#include "qsdc/rng.hpp"

namespace qsdc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::complex<double> phasor(const Tone& t) {
  return std::polar(t.amplitude, t.phase);
}

}  // namespace

void validate_signal(const BandlimitedSignal& sig) {
  if (!std::isfinite(sig.f_max) || sig.f_max < 0.0) {
    throw std::invalid_argument("signal: f_max must be finite and >= 0");
  }
  for (const Tone& t : sig.components) {
    if (!std::isfinite(t.frequency) || t.frequency < 0.0) {
      throw std::invalid_argument("signal: tone frequency must be >= 0");
    }
    if (t.frequency > sig.f_max) {
      throw std::invalid_argument("signal: tone frequency exceeds f_max");
    }
    if (!std::isfinite(t.amplitude) || !std::isfinite(t.phase)) {
      throw std::invalid_argument("signal: tone amplitude/phase not finite");
    }
  }
}

BandlimitedSignal synthesize_signal(std::uint64_t seed, double f_max,
                                    int n_components, double amplitude_bound,
                                    double freq_step) {
  if (n_components < 1) {
    throw std::invalid_argument("synthesize_signal: n_components must be >= 1");
  }
  if (!(f_max > 0.0) || !std::isfinite(f_max)) {
    throw std::invalid_argument("synthesize_signal: f_max must be > 0");
  }
  if (!(amplitude_bound > 0.0) || !std::isfinite(amplitude_bound)) {
    throw std::invalid_argument(
        "synthesize_signal: amplitude_bound must be > 0");
  }
  if (freq_step < 0.0 || !std::isfinite(freq_step)) {
    throw std::invalid_argument("synthesize_signal: freq_step must be >= 0");
  }
  std::uint64_t n_steps = 0;
  if (freq_step > 0.0) {
    n_steps = static_cast<std::uint64_t>(std::floor(f_max / freq_step));
    if (n_steps == 0) {
      throw std::invalid_argument(
          "synthesize_signal: freq_step leaves no frequency in (0, f_max]");
    }
  }

  RandomStream rng = derive_stream(seed, 0, role::kSynthesis);
  BandlimitedSignal sig;
  sig.f_max = f_max;
  sig.components.reserve(static_cast<std::size_t>(n_components));
  for (int k = 0; k < n_components; ++k) {
    Tone t;
    if (freq_step > 0.0) {
      t.frequency = static_cast<double>(rng.uniform_int(n_steps) + 1) * freq_step;
      // Guard against rounding past the band edge for awkward steps.
      if (t.frequency > f_max) t.frequency = f_max;
    } else {
      t.frequency = f_max * (1.0 - rng.uniform());  // (0, f_max]
    }
    t.amplitude = rng.uniform(-amplitude_bound, amplitude_bound);
    t.phase = rng.uniform(0.0, kTwoPi);
    sig.components.push_back(t);
  }
  return sig;
}

double eval_signal(const BandlimitedSignal& sig, double t) {
  double acc = 0.0;
  for (const Tone& c : sig.components) {
    acc += c.amplitude * std::cos(kTwoPi * c.frequency * t + c.phase);
  }
  return acc;
}

std::pair<BandlimitedSignal, BandlimitedSignal> split_signal(
    const BandlimitedSignal& sig, std::uint64_t seed) {
  const double bound = signal_rms(sig);
  RandomStream rng = derive_stream(seed, 0, role::kSplit);

  BandlimitedSignal s1, s2;
  s1.f_max = sig.f_max;
  s2.f_max = sig.f_max;
  s1.components.reserve(sig.components.size());
  s2.components.reserve(sig.components.size());
  for (const Tone& c : sig.components) {
    Tone t1;
    t1.frequency = c.frequency;
    t1.amplitude = rng.uniform(-bound, bound);
    t1.phase = rng.uniform(0.0, kTwoPi);
    const std::complex<double> rest = phasor(c) - phasor(t1);
    Tone t2;
    t2.frequency = c.frequency;
    t2.amplitude = std::abs(rest);
    t2.phase = std::arg(rest);
    s1.components.push_back(t1);
    s2.components.push_back(t2);
  }
  return {s1, s2};
}

double signal_rmse(const BandlimitedSignal& a, const BandlimitedSignal& b,
                   std::span<const double> grid) {
  if (grid.empty()) {
    throw std::invalid_argument("signal_rmse: grid must be nonempty");
  }
  double acc = 0.0;
  for (double t : grid) {
    const double d = eval_signal(a, t) - eval_signal(b, t);
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(grid.size()));
}

double signal_rms(const BandlimitedSignal& sig) {
  std::map<double, std::complex<double>> merged;
  for (const Tone& c : sig.components) {
    merged[c.frequency] += phasor(c);
  }
  double acc = 0.0;
  for (const auto& [f, c] : merged) {
    // A zero-frequency tone is the constant a*cos(theta) = Re(c).
    acc += (f == 0.0) ? c.real() * c.real() : 0.5 * std::norm(c);
  }
  return std::sqrt(acc);
}

BandlimitedSignal signal_sum(const BandlimitedSignal& a,
                             const BandlimitedSignal& b) {
  BandlimitedSignal out;
  out.f_max = std::max(a.f_max, b.f_max);
  out.components = a.components;
  out.components.insert(out.components.end(), b.components.begin(),
                        b.components.end());
  return out;
}

}  // namespace qsdc
