#include "qsdc/security.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qsdc/errors.hpp"
#include "qsdc/special.hpp"

namespace qsdc {

namespace {

// Upper end of the root bracket for the compensation condition. t' > 1 is
// allowed mathematically; feasibility is the caller's concern.
constexpr double kCompensationBracketMax = 10.0;

}  // namespace

void validate_params(const ProtocolParams& p) {
  if (!(p.mu_s > 0.0) || !std::isfinite(p.mu_s)) {
    throw std::invalid_argument("params: mu_s must be > 0");
  }
  if (!(p.mu_r > 0.0) || !std::isfinite(p.mu_r)) {
    throw std::invalid_argument("params: mu_r must be > 0");
  }
  if (!(p.mu_s > p.mu_r)) {
    throw std::invalid_argument("params: requires mu_s > mu_r");
  }
  if (!(p.t_c > 0.0) || !(p.t_c <= 1.0)) {
    throw std::invalid_argument("params: t_c must be in (0, 1]");
  }
  if (!(p.pulse_period > 0.0) || !std::isfinite(p.pulse_period)) {
    throw std::invalid_argument("params: pulse_period must be > 0");
  }
  if (!(p.f_max > 0.0) || !std::isfinite(p.f_max)) {
    throw std::invalid_argument("params: f_max must be > 0");
  }
  if (!(p.rate_prefactor > 0.0) || !std::isfinite(p.rate_prefactor)) {
    throw std::invalid_argument("params: rate_prefactor must be > 0");
  }
  if (p.f_sub) {
    if (!(*p.f_sub > 0.0) || !(*p.f_sub <= 2.0 * p.f_max)) {
      throw std::invalid_argument("params: f_sub must be in (0, 2*f_max]");
    }
  }
}

double base_frequency(const ProtocolParams& p) {
  return p.f_sub ? *p.f_sub / 2.0 : p.f_max;
}

double click_probability(double t_eff, double mu) {
  if (!(t_eff >= 0.0) || !(t_eff <= 1.0)) {
    throw std::invalid_argument("click_probability: t_eff must be in [0, 1]");
  }
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument("click_probability: mu must be >= 0");
  }
  return -std::expm1(-t_eff * mu);
}

double threshold_s(const ProtocolParams& p) {
  return p.rate_prefactor * base_frequency(p) /
         click_probability(p.t_c, p.mu_s);
}

double threshold_r(const ProtocolParams& p) {
  return p.rate_prefactor * base_frequency(p) /
         click_probability(p.t_c, p.mu_r);
}

double threshold_eve_intercept(const ProtocolParams& p, double t_channel) {
  if (!(t_channel > 0.0) || !(t_channel <= 1.0)) {
    throw std::invalid_argument(
        "threshold_eve_intercept: t_channel must be in (0, 1]");
  }
  const double denom = 1.0 - 0.5 * std::exp(-t_channel * p.mu_s) -
                       0.5 * std::exp(-t_channel * p.mu_r);
  return p.rate_prefactor * base_frequency(p) / denom;
}

double compensation_residual(double t_prime, const ProtocolParams& p) {
  if (!(t_prime >= 0.0)) {
    throw std::invalid_argument("compensation_residual: t_prime must be >= 0");
  }
  return std::exp(-t_prime * p.mu_s) + std::exp(-t_prime * p.mu_r) -
         2.0 * std::exp(-p.t_c * p.mu_s);
}

double compensated_transmissivity(const ProtocolParams& p,
                                  CompensationMethod method) {
  if (!(p.mu_s > p.mu_r)) {
    throw std::invalid_argument(
        "compensated_transmissivity: requires mu_s > mu_r");
  }
  if (method == CompensationMethod::kNumeric) {
    try {
      return solve_monotone_root(
          [&p](double t) { return compensation_residual(t, p); }, 0.0,
          kCompensationBracketMax, 1e-12);
    } catch (const BracketError&) {
      throw InfeasibleError(
          "compensated_transmissivity: no root in [0, 10]");
    }
  }

  // Closed form. The exponent ratio (mu_r - mu_s)/mu_s is negative, so
  // q > 2 and the W_q evaluation sits on the bijective part of the map.
  const double ratio = (p.mu_r - p.mu_s) / p.mu_s;
  const double q = 1.0 - p.mu_s / (p.mu_r - p.mu_s);
  const double z =
      ratio * std::pow(2.0 * std::exp(-p.t_c * p.mu_s), ratio);
  double w;
  try {
    w = lambert_tsallis_wq(q, z);
  } catch (const std::domain_error&) {
    throw InfeasibleError(
        "compensated_transmissivity: W_q argument out of domain");
  }
  const double inner = w / ratio;  // mu_s/(mu_r-mu_s) * W_q(z)
  if (!(inner > 0.0)) {
    throw InfeasibleError(
        "compensated_transmissivity: closed form left the log domain");
  }
  const double t_prime = std::log(inner) / (p.mu_s - p.mu_r);
  if (t_prime > kCompensationBracketMax) {
    // Same feasibility cap the numeric bracket enforces.
    throw InfeasibleError("compensated_transmissivity: root beyond t = 10");
  }
  return t_prime;
}

double threshold_eve_beamsplitter(const ProtocolParams& p) {
  if (p.t_c == 1.0) {
    // Eve's tap carries vacuum; no pulse rate lets her reconstruct.
    return std::numeric_limits<double>::infinity();
  }
  return p.rate_prefactor * base_frequency(p) /
         click_probability(1.0 - p.t_c, p.mu_s);
}

ThresholdReport secure_pulse_rate_window(const ProtocolParams& p) {
  validate_params(p);
  ThresholdReport r;
  r.f_p_s = threshold_s(p);
  r.f_p_r = threshold_r(p);
  r.f_p_e = threshold_eve_intercept(p, p.t_c);
  r.f_eve_bs = threshold_eve_beamsplitter(p);
  r.window_lo = r.f_p_s;
  r.window_hi = std::min({r.f_p_r, r.f_p_e, r.f_eve_bs});
  r.window_nonempty = r.window_lo < r.window_hi;
  r.bs_secure = p.t_c > 0.5;
  const double rate = 1.0 / p.pulse_period;
  r.rate_in_window = r.window_nonempty && rate > r.window_lo &&
                     rate < r.window_hi;
  return r;
}

}  // namespace qsdc
