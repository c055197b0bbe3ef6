#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>

#include "doctest.h"
#include "qsdc/errors.hpp"
#include "qsdc/rng.hpp"
#include "qsdc/security.hpp"

using namespace qsdc;

namespace {

// Worked-example parameters; prefactor 1 reproduces the published numbers.
ProtocolParams example_params(double prefactor = 1.0) {
  ProtocolParams p;
  p.mu_s = 0.6;
  p.mu_r = 0.4;
  p.t_c = 0.6;
  p.f_max = 1.0;
  p.pulse_period = 1.0 / 3.31;
  p.rate_prefactor = prefactor;
  return p;
}

// Frozen pre-build oracle values (30-digit arithmetic).
constexpr double kClickSS = 0.302323673928968943;        // 1 - e^{-0.36}
constexpr double kClickRR = 0.213372138933446591;        // 1 - e^{-0.24}
constexpr double kMixture = 0.257847906431207767;        // Eq. (3) denominator
constexpr double kFpS = 3.30771317708632492;
constexpr double kFpR = 4.68664749296023305;
constexpr double kFpE = 3.87825526233928853;
constexpr double kTPrime = 0.725255348477925896;         // Eq. (4) root

}  // namespace

TEST_CASE("click_probability values and limits") {
  CHECK(click_probability(0.6, 0.0) == 0.0);
  CHECK(click_probability(0.0, 5.0) == 0.0);
  CHECK(click_probability(0.6, 0.6) ==
        doctest::Approx(kClickSS).epsilon(1e-14));
  CHECK(click_probability(0.6, 0.6) == doctest::Approx(0.30232).epsilon(1e-4));
  CHECK(click_probability(0.6, 0.4) ==
        doctest::Approx(kClickRR).epsilon(1e-14));
  CHECK(click_probability(0.4, 0.6) ==
        doctest::Approx(kClickRR).epsilon(1e-14));
  CHECK(click_probability(1.0, 100.0) < 1.0);
  CHECK_THROWS_AS(click_probability(-0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(click_probability(0.5, -1.0), std::invalid_argument);
}

TEST_CASE("click_probability is strictly increasing in both arguments") {
  RandomStream rng(5);
  for (int i = 0; i < 200; ++i) {
    const double t = rng.uniform(0.01, 0.99);
    const double mu = rng.uniform(0.01, 3.0);
    CHECK(click_probability(t + 0.01, mu) > click_probability(t, mu));
    CHECK(click_probability(t, mu + 0.01) > click_probability(t, mu));
  }
}

TEST_CASE("worked-example thresholds, prefactor 1") {
  const auto p = example_params();
  CHECK(threshold_s(p) == doctest::Approx(kFpS).epsilon(1e-13));
  CHECK(threshold_r(p) == doctest::Approx(kFpR).epsilon(1e-13));
  CHECK(threshold_eve_intercept(p, p.t_c) ==
        doctest::Approx(kFpE).epsilon(1e-13));
}

TEST_CASE("prefactor scales thresholds linearly") {
  const auto p1 = example_params(1.0);
  const auto p4 = example_params(4.0);
  CHECK(threshold_s(p4) == doctest::Approx(4.0 * threshold_s(p1)));
  CHECK(threshold_r(p4) == doctest::Approx(4.0 * threshold_r(p1)));
  CHECK(threshold_s(p4) == doctest::Approx(13.2308527083453).epsilon(1e-12));
}

TEST_CASE("threshold limits and degenerate cases") {
  auto p = example_params();
  p.mu_s = 1e6;
  CHECK(threshold_s(p) ==
        doctest::Approx(p.rate_prefactor * p.f_max).epsilon(1e-12));

  // Equal means: same formula, and the intercept mixture collapses.
  auto q = example_params();
  q.mu_r = q.mu_s;
  CHECK(threshold_r(q) == threshold_s(q));
  CHECK(threshold_eve_intercept(q, q.t_c) ==
        doctest::Approx(q.rate_prefactor * q.f_max /
                        click_probability(q.t_c, q.mu_s))
            .epsilon(1e-14));
}

TEST_CASE("threshold ordering f_p_s < f_p_e < f_p_r") {
  RandomStream rng(17);
  for (int i = 0; i < 2000; ++i) {
    ProtocolParams p;
    p.mu_r = rng.uniform(0.05, 2.0);
    p.mu_s = p.mu_r + rng.uniform(0.01, 2.0);
    p.t_c = rng.uniform(0.05, 1.0);
    p.f_max = 1.0;
    p.pulse_period = 1.0;
    p.rate_prefactor = 1.0;
    const double fs = threshold_s(p);
    const double fe = threshold_eve_intercept(p, p.t_c);
    const double fr = threshold_r(p);
    REQUIRE(fs < fe);
    REQUIRE(fe < fr);
  }
}

TEST_CASE("compensation residual shape") {
  const auto p = example_params();
  auto eq = example_params();
  eq.mu_r = eq.mu_s;
  CHECK(std::abs(compensation_residual(eq.t_c, eq)) < 1e-15);
  CHECK(compensation_residual(0.0, p) > 0.0);
  CHECK(compensation_residual(0.4, p) > compensation_residual(0.5, p));
  CHECK_THROWS_AS(compensation_residual(-0.1, p), std::invalid_argument);
}

TEST_CASE("compensated transmissivity at the worked example") {
  const auto p = example_params();
  const double numeric =
      compensated_transmissivity(p, CompensationMethod::kNumeric);
  const double closed =
      compensated_transmissivity(p, CompensationMethod::kClosedForm);
  CHECK(numeric == doctest::Approx(kTPrime).epsilon(1e-9));
  CHECK(closed == doctest::Approx(kTPrime).epsilon(1e-9));
  CHECK(std::abs(numeric - closed) <= 1e-9);
  // Residual vanishes at the root.
  CHECK(std::abs(compensation_residual(numeric, p)) < 1e-11);
}

TEST_CASE("closed form matches the numeric root on a parameter grid") {
  for (double mu_s : {0.3, 0.6, 0.9, 1.2, 1.5}) {
    for (double ratio : {0.2, 0.35, 0.5, 0.65, 0.8}) {
      for (double t_c : {0.3, 0.5, 0.7, 0.9}) {
        ProtocolParams p;
        p.mu_s = mu_s;
        p.mu_r = ratio * mu_s;
        p.t_c = t_c;
        p.f_max = 1.0;
        p.pulse_period = 1.0;
        const double a =
            compensated_transmissivity(p, CompensationMethod::kNumeric);
        const double b =
            compensated_transmissivity(p, CompensationMethod::kClosedForm);
        REQUIRE(std::abs(a - b) <= 1e-9);
      }
    }
  }
}

TEST_CASE("compensation approaches t_c as mu_r -> mu_s") {
  ProtocolParams p;
  p.mu_s = 0.6;
  p.mu_r = 0.6 * (1.0 - 1e-6);
  p.t_c = 0.6;
  p.f_max = 1.0;
  p.pulse_period = 1.0;
  const double t =
      compensated_transmissivity(p, CompensationMethod::kNumeric);
  CHECK(t == doctest::Approx(0.6).epsilon(1e-5));
}

TEST_CASE("compensation infeasible when no root exists below the cap") {
  ProtocolParams p;
  p.mu_s = 3.0;
  p.mu_r = 1e-4;
  p.t_c = 1.0;
  p.f_max = 1.0;
  p.pulse_period = 1.0;
  CHECK_THROWS_AS(compensated_transmissivity(p, CompensationMethod::kNumeric),
                  InfeasibleError);
  CHECK_THROWS_AS(
      compensated_transmissivity(p, CompensationMethod::kClosedForm),
      InfeasibleError);
}

TEST_CASE("substituting t'_c into the intercept threshold restores f_p_s") {
  RandomStream rng(23);
  for (int i = 0; i < 200; ++i) {
    ProtocolParams p;
    p.mu_r = rng.uniform(0.1, 1.0);
    p.mu_s = p.mu_r + rng.uniform(0.05, 1.0);
    p.t_c = rng.uniform(0.2, 1.0);
    p.f_max = 1.0;
    p.pulse_period = 1.0;
    double t_prime;
    try {
      t_prime = compensated_transmissivity(p, CompensationMethod::kNumeric);
    } catch (const InfeasibleError&) {
      continue;
    }
    if (t_prime > 1.0) continue;  // not a physical channel; skip
    const double fe = threshold_eve_intercept(p, t_prime);
    const double fs = threshold_s(p);
    REQUIRE(std::abs(fe - fs) <= 1e-9 * fs);
  }
}

TEST_CASE("beam-splitter threshold") {
  const auto p = example_params();
  CHECK(threshold_eve_beamsplitter(p) == doctest::Approx(kFpR).epsilon(1e-13));

  auto boundary = example_params();
  boundary.t_c = 0.5;
  CHECK(threshold_eve_beamsplitter(boundary) == threshold_s(boundary));

  auto below = example_params();
  below.t_c = 0.4;
  CHECK(threshold_eve_beamsplitter(below) < threshold_s(below));

  auto unity = example_params();
  unity.t_c = 1.0;
  CHECK(std::isinf(threshold_eve_beamsplitter(unity)));
}

TEST_CASE("secure pulse-rate window at the worked example") {
  auto p = example_params();
  const auto rep = secure_pulse_rate_window(p);
  CHECK(rep.window_lo == doctest::Approx(kFpS).epsilon(1e-13));
  CHECK(rep.window_hi == doctest::Approx(kFpE).epsilon(1e-13));
  CHECK(rep.window_nonempty);
  CHECK(rep.bs_secure);
  CHECK(rep.rate_in_window);  // 3.31 sits inside (3.3077, 3.8783)
}

TEST_CASE("window collapses at the beam-splitter boundary") {
  auto p = example_params();
  p.t_c = 0.5;
  const auto rep = secure_pulse_rate_window(p);
  // Eve's beam-splitter bound equals the lower edge exactly.
  CHECK(rep.window_hi <= rep.window_lo);
  CHECK_FALSE(rep.window_nonempty);
  CHECK_FALSE(rep.bs_secure);
}

TEST_CASE("sub-Nyquist hook") {
  auto p = example_params(4.0);
  const auto base = secure_pulse_rate_window(p);
  p.f_sub = 2.0 * p.f_max;
  const auto same = secure_pulse_rate_window(p);
  // Bit-for-bit identical when f_sub = 2 f_max.
  CHECK(same.f_p_s == base.f_p_s);
  CHECK(same.f_p_r == base.f_p_r);
  CHECK(same.f_p_e == base.f_p_e);
  CHECK(same.f_eve_bs == base.f_eve_bs);

  p.f_sub = p.f_max;  // halves every numerator
  const auto half = secure_pulse_rate_window(p);
  CHECK(half.f_p_s == doctest::Approx(0.5 * base.f_p_s).epsilon(1e-15));
  CHECK(half.f_p_r == doctest::Approx(0.5 * base.f_p_r).epsilon(1e-15));
}

TEST_CASE("validate_params names the violated constraint") {
  auto p = example_params();
  p.mu_r = p.mu_s;
  CHECK_THROWS_WITH_AS(validate_params(p), "params: requires mu_s > mu_r",
                       std::invalid_argument);
  p = example_params();
  p.t_c = 0.0;
  CHECK_THROWS_AS(validate_params(p), std::invalid_argument);
  p = example_params();
  p.f_sub = 3.0 * p.f_max;
  CHECK_THROWS_AS(validate_params(p), std::invalid_argument);
  CHECK_NOTHROW(validate_params(example_params()));
}
