#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace qsdc {

// One cosine component: a * cos(2*pi*f*t + theta).
struct Tone {
  double frequency = 0.0;  // Hz, >= 0
  double amplitude = 0.0;
  double phase = 0.0;  // radians
};

// Band-limited signal as a finite tone sum. Immutable by convention after
// construction; every operation below returns fresh values.
struct BandlimitedSignal {
  double f_max = 0.0;  // Hz; no component may exceed this
  std::vector<Tone> components;
};

// Throws std::invalid_argument when a component violates the band limit or
// any field is non-finite.
void validate_signal(const BandlimitedSignal& sig);

// Random test/message signal: n_components tones, frequencies in
// (0, f_max], amplitudes in [-amplitude_bound, amplitude_bound], phases in
// [0, 2*pi). freq_step > 0 restricts frequencies to multiples of freq_step
// (needed when downstream reconstruction assumes an on-grid truth);
// freq_step == 0 draws continuously. Deterministic in seed.
BandlimitedSignal synthesize_signal(std::uint64_t seed, double f_max,
                                    int n_components, double amplitude_bound,
                                    double freq_step = 0.0);

double eval_signal(const BandlimitedSignal& sig, double t);

// Additive secret sharing of a signal: s1 carries the same frequencies with
// amplitudes uniform in +-rms(sig) and fresh phases, s2 is the per-frequency
// phasor difference, so eval(s1,t) + eval(s2,t) == eval(sig,t) up to
// rounding and both halves stay band-limited to sig.f_max.
std::pair<BandlimitedSignal, BandlimitedSignal> split_signal(
    const BandlimitedSignal& sig, std::uint64_t seed);

// Root mean square of eval(a,t) - eval(b,t) over the grid.
// Throws std::invalid_argument on an empty grid.
double signal_rmse(const BandlimitedSignal& a, const BandlimitedSignal& b,
                   std::span<const double> grid);

// Analytic RMS over an infinite horizon: phasor-merges equal frequencies,
// then sqrt(dc^2 + sum |c_f|^2 / 2).
double signal_rms(const BandlimitedSignal& sig);

// Tone-list concatenation; f_max of the result is the larger of the two.
BandlimitedSignal signal_sum(const BandlimitedSignal& a,
                             const BandlimitedSignal& b);

}  // namespace qsdc
