#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "qsdc/rng.hpp"
#include "qsdc/signal.hpp"

using namespace qsdc;

namespace {

// Independent oracle: plain term-by-term summation in long double,
// deliberately not sharing code with eval_signal.
long double direct_sum(const BandlimitedSignal& sig, double t) {
  long double acc = 0.0L;
  for (const Tone& c : sig.components) {
    acc += static_cast<long double>(c.amplitude) *
           std::cos(2.0L * std::numbers::pi_v<long double> *
                        static_cast<long double>(c.frequency) *
                        static_cast<long double>(t) +
                    static_cast<long double>(c.phase));
  }
  return acc;
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n);
  }
  return g;
}

}  // namespace

TEST_CASE("synthesize_signal is deterministic in the seed") {
  const auto a = synthesize_signal(7, 2.0e6, 5, 1.5);
  const auto b = synthesize_signal(7, 2.0e6, 5, 1.5);
  REQUIRE(a.components.size() == b.components.size());
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    CHECK(a.components[i].frequency == b.components[i].frequency);
    CHECK(a.components[i].amplitude == b.components[i].amplitude);
    CHECK(a.components[i].phase == b.components[i].phase);
  }
  const auto c = synthesize_signal(8, 2.0e6, 5, 1.5);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    any_diff |= a.components[i].frequency != c.components[i].frequency;
  }
  CHECK(any_diff);
}

TEST_CASE("synthesize_signal rejects bad parameters") {
  CHECK_THROWS_AS(synthesize_signal(1, 1.0, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(synthesize_signal(1, 0.0, 3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(synthesize_signal(1, 1.0, 3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(synthesize_signal(1, 1.0, 3, 1.0, -0.5),
                  std::invalid_argument);
  // Step coarser than the band leaves no admissible frequency.
  CHECK_THROWS_AS(synthesize_signal(1, 1.0, 3, 1.0, 2.0),
                  std::invalid_argument);
}

TEST_CASE("synthesized signals satisfy the band-limit invariant") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto sig = synthesize_signal(seed, 3.5, 6, 2.0);
    CHECK_NOTHROW(validate_signal(sig));
    REQUIRE(sig.components.size() == 6);
    for (const Tone& t : sig.components) {
      CHECK(t.frequency > 0.0);
      CHECK(t.frequency <= 3.5);
      CHECK(std::abs(t.amplitude) <= 2.0);
    }
  }
}

TEST_CASE("synthesize_signal honors the frequency grid") {
  const double step = 0.125;
  const auto sig = synthesize_signal(11, 1.0, 40, 1.0, step);
  for (const Tone& t : sig.components) {
    const double k = t.frequency / step;
    CHECK(std::abs(k - std::round(k)) < 1e-12);
    CHECK(t.frequency <= 1.0);
    CHECK(t.frequency > 0.0);
  }
}

TEST_CASE("eval_signal basics") {
  CHECK(eval_signal(BandlimitedSignal{1.0, {}}, 0.37) == 0.0);
  const BandlimitedSignal tone{1.5e6, {Tone{1.5e6, 1.0, 0.0}}};
  CHECK(eval_signal(tone, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("eval_signal matches an independent direct summation") {
  const auto sig = synthesize_signal(42, 5.0, 5, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double t = -2.0 + 4.0 * i / 100.0;
    const double expect = static_cast<double>(direct_sum(sig, t));
    CHECK(eval_signal(sig, t) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("linearity: eval of a sum equals sum of evals") {
  const auto a = synthesize_signal(1, 2.0, 4, 1.0);
  const auto b = synthesize_signal(2, 2.0, 3, 0.7);
  const auto sum = signal_sum(a, b);
  RandomStream rng(99);
  for (int i = 0; i < 200; ++i) {
    const double t = rng.uniform(-5.0, 5.0);
    CHECK(eval_signal(sum, t) ==
          doctest::Approx(eval_signal(a, t) + eval_signal(b, t))
              .epsilon(1e-12));
  }
}

TEST_CASE("split_signal reconstruction identity") {
  const auto sig = synthesize_signal(31, 1.0, 5, 1.0);
  const auto [s1, s2] = split_signal(sig, 77);
  CHECK_NOTHROW(validate_signal(s1));
  CHECK_NOTHROW(validate_signal(s2));
  CHECK(s1.f_max == sig.f_max);
  CHECK(s2.f_max == sig.f_max);
  const auto grid = uniform_grid(0.0, 64.0, 1000);
  double worst = 0.0;
  for (double t : grid) {
    worst = std::max(worst, std::abs(eval_signal(s1, t) + eval_signal(s2, t) -
                                     eval_signal(sig, t)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("split of the zero signal gives opposite halves") {
  BandlimitedSignal zero{1.0, {Tone{0.25, 0.0, 0.0}, Tone{0.5, 0.0, 1.0}}};
  const auto [s1, s2] = split_signal(zero, 5);
  const auto grid = uniform_grid(0.0, 10.0, 200);
  for (double t : grid) {
    CHECK(eval_signal(s1, t) ==
          doctest::Approx(-eval_signal(s2, t)).epsilon(1e-12));
  }
}

TEST_CASE("split halves are bounded by the source RMS") {
  const auto sig = synthesize_signal(3, 1.0, 5, 1.0);
  const double rms = signal_rms(sig);
  const auto [s1, s2] = split_signal(sig, 8);
  for (const Tone& t : s1.components) {
    CHECK(std::abs(t.amplitude) <= rms);
  }
}

TEST_CASE("signal_rmse is a pseudometric") {
  const auto a = synthesize_signal(10, 1.0, 5, 1.0);
  const auto b = synthesize_signal(20, 1.0, 5, 1.0);
  const auto grid = uniform_grid(0.0, 32.0, 500);
  CHECK(signal_rmse(a, a, grid) == 0.0);
  CHECK(signal_rmse(a, b, grid) == signal_rmse(b, a, grid));
  CHECK(signal_rmse(a, b, grid) >= 0.0);
  CHECK_THROWS_AS(signal_rmse(a, b, std::vector<double>{}),
                  std::invalid_argument);
}

TEST_CASE("rmse of a unit tone against zero is 1/sqrt(2)") {
  const BandlimitedSignal tone{1.0, {Tone{1.0, 1.0, 0.0}}};
  const BandlimitedSignal zero{1.0, {}};
  // 40 periods, 100 points per period.
  const auto grid = uniform_grid(0.0, 40.0, 4000);
  const double got = signal_rmse(tone, zero, grid);

  // Quadrature oracle: mean of cos^2 over the same grid, accumulated in
  // long double without going through eval_signal.
  long double acc = 0.0L;
  for (double t : grid) {
    const long double c =
        std::cos(2.0L * std::numbers::pi_v<long double> *
                 static_cast<long double>(t));
    acc += c * c;
  }
  const double expect =
      std::sqrt(static_cast<double>(acc / static_cast<long double>(grid.size())));
  CHECK(got == doctest::Approx(expect).epsilon(1e-12));
  CHECK(got == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("analytic RMS agrees with a dense grid estimate") {
  const auto sig = synthesize_signal(55, 1.0, 5, 1.0, 0.125);
  const BandlimitedSignal zero{1.0, {}};
  // On-grid tones: 8 s is a common period, so average over full cycles.
  const auto grid = uniform_grid(0.0, 8.0, 8000);
  CHECK(signal_rms(sig) ==
        doctest::Approx(signal_rmse(sig, zero, grid)).epsilon(1e-9));
}

TEST_CASE("validate_signal rejects band violations") {
  CHECK_THROWS_AS(validate_signal(BandlimitedSignal{1.0, {Tone{1.5, 1.0, 0.0}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      validate_signal(BandlimitedSignal{1.0, {Tone{-0.5, 1.0, 0.0}}}),
      std::invalid_argument);
}
