#pragma once

#include <optional>

namespace qsdc {

// Every symbol of the protocol's rate conditions in one place.
// t_c is the end-to-end transmissivity, receiver losses included.
struct ProtocolParams {
  double mu_s = 0.6;  // mean photon number, message pulse
  double mu_r = 0.4;  // mean photon number, decoy pulse; mu_s > mu_r > 0
  double t_c = 0.6;   // channel transmissivity in (0, 1]
  double f_max = 1.0;          // Hz, band limit of s(t) and r(t)
  double pulse_period = 0.02;  // T_p, seconds between pulse pairs
  // Numerator factor of the rate thresholds. 4 is the conservative reading
  // of the reconstruction bound; 1 reproduces the bundled worked example.
  double rate_prefactor = 4.0;
  // Sub-Nyquist hook: when set, replaces 2*f_max as the base sampling rate
  // in every threshold. Must lie in (0, 2*f_max].
  std::optional<double> f_sub;
};

// Throws std::invalid_argument naming the violated constraint.
void validate_params(const ProtocolParams& p);

// Numerator frequency of the thresholds: f_max, or f_sub/2 under the
// sub-Nyquist substitution (so f_sub = 2*f_max is bit-for-bit neutral).
double base_frequency(const ProtocolParams& p);

// P(at least one photon survives) = 1 - exp(-t_eff * mu).
double click_probability(double t_eff, double mu);

// Minimum pulse rate 1/T_p for Bob to reconstruct s(t):
// rate_prefactor * f_base / (1 - exp(-t_c * mu_s)).
double threshold_s(const ProtocolParams& p);

// Same bound for the decoy r(t) (mu_r in the denominator).
double threshold_r(const ProtocolParams& p);

// Rate bound under an intercept/resend channel where the incoming mean
// photon number is mu_s or mu_r with equal odds:
// rate_prefactor * f_base / (1 - exp(-t*mu_s)/2 - exp(-t*mu_r)/2).
double threshold_eve_intercept(const ProtocolParams& p, double t_channel);

// exp(-t'*mu_s) + exp(-t'*mu_r) - 2*exp(-t_c*mu_s); zero at the
// transmissivity Eve must present to hide an intercept/resend attack.
double compensation_residual(double t_prime, const ProtocolParams& p);

enum class CompensationMethod { kClosedForm, kNumeric };

// The compensating transmissivity t'_c. kNumeric bisects the residual on
// [0, 10]; kClosedForm evaluates the Lambert-Tsallis expression
//   t' = ln((mu_s/(mu_r-mu_s)) * W_q(z)) / (mu_s - mu_r),
//   q = 1 - mu_s/(mu_r-mu_s),
//   z = ((mu_r-mu_s)/mu_s) * (2 exp(-t_c mu_s))^((mu_r-mu_s)/mu_s).
// Both agree to <= 1e-9. The value may exceed 1 (then no physical channel
// realizes it; callers flag that). Throws InfeasibleError when no root
// exists in [0, 10] or the special function leaves its domain.
double compensated_transmissivity(const ProtocolParams& p,
                                  CompensationMethod method);

// Rate bound for an eavesdropper holding the (1 - t_c) beam-splitter tap:
// rate_prefactor * f_base / (1 - exp(-(1-t_c)*mu_s)). Returns +infinity at
// t_c = 1 (Eve receives vacuum).
double threshold_eve_beamsplitter(const ProtocolParams& p);

struct ThresholdReport {
  double f_p_s = 0.0;      // Hz
  double f_p_r = 0.0;      // Hz
  double f_p_e = 0.0;      // Hz, intercept/resend bound at t_c
  double f_eve_bs = 0.0;   // Hz, beam-splitter bound (may be +inf)
  double window_lo = 0.0;  // Hz
  double window_hi = 0.0;  // Hz
  bool window_nonempty = false;
  bool bs_secure = false;      // t_c > 0.5
  bool rate_in_window = false; // whether the configured 1/T_p fits
};

// window = (threshold_s, min(threshold_r, intercept bound, beam-splitter
// bound)): pulse rates where Bob recovers s(t) but neither the decoy nor
// any analyzed adversary recovers anything.
ThresholdReport secure_pulse_rate_window(const ProtocolParams& p);

}  // namespace qsdc
