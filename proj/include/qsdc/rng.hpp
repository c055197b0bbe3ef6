#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace qsdc {

// Reproducibility contract
// ------------------------
// Every random draw in the simulator comes from a RandomStream, a SplitMix64
// generator (Steele, Lea, Flood 2014). Streams are derived from the session
// seed with derive_stream(seed, index, role), so the draw consumed by one
// slot/role pair never depends on how many draws another slot made. The
// mapping is pure 64-bit integer arithmetic plus IEEE-754 double ops, hence
// bit-identical across platforms and compilers.

namespace detail {

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer (also a strong 64-bit mixer in its own right).
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace detail

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += detail::kGamma;
    return detail::mix64(state_);
  }

  // Uniform double in [0, 1), 53 mantissa bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  // Bias is < n / 2^64, negligible for the small n used here.
  std::uint64_t uniform_int(std::uint64_t n) { return next_u64() % n; }

  // Standard normal via Box-Muller; consumes exactly two uniforms and keeps
  // no cached state, so draw counts stay predictable.
  double gaussian() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

// Substream derivation: absorb index and role into the seed through three
// mixer rounds. Distinct (seed, index, role) triples give independent
// streams for all practical purposes.
inline RandomStream derive_stream(std::uint64_t seed, std::uint64_t index,
                                  std::uint64_t role) {
  std::uint64_t s = detail::mix64(seed + detail::kGamma);
  s = detail::mix64(s ^ (index * detail::kGamma + 1));
  s = detail::mix64(s ^ (role * detail::kGamma + 2));
  return RandomStream(s);
}

// Role tags for derive_stream. Values are part of the stream contract: do
// not renumber without bumping the artifact version.
namespace role {
inline constexpr std::uint64_t kTag = 0;         // Alice's slot-type coin
inline constexpr std::uint64_t kBobDetect = 1;   // Bob's click + readout noise
inline constexpr std::uint64_t kEveDetect = 2;   // Eve's click
inline constexpr std::uint64_t kEveResend = 3;   // Eve's mu guess + filler phase
inline constexpr std::uint64_t kSynthesis = 4;   // signal synthesis
inline constexpr std::uint64_t kSplit = 5;       // two-phase signal split
inline constexpr std::uint64_t kHarness = 6;     // test/CLI-level draws
}  // namespace role

}  // namespace qsdc
