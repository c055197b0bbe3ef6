#pragma once

#include <functional>

namespace qsdc {

// Argument bundle for the Lambert-Tsallis evaluation.
struct WqQuery {
  double q = 1.0;  // Tsallis parameter
  double z = 0.0;
};

// Tsallis q-exponential: [1 + (1-q)x]^(1/(1-q)), with exp_1 = exp.
// Throws std::domain_error when 1 + (1-q)x <= 0 (hard error by design; a
// silent clamp would mask bad brackets upstream).
double q_exponential(double q, double x);

// Smallest argument of the principal branch of W_q: the infimum of
// x * exp_q(x). Equals -1/e at q = 1 (attained), -1 at q = 2 (open; the
// pole of W_2(z) = z/(1+z)), and -infinity for q > 2 where the map is a
// bijection of the reals.
double wq_branch_min_argument(double q);

// Principal-branch Lambert-Tsallis W_q: the solution of
// W * exp_q(W) = z with W >= -1/(2-q) (for q < 2; unique for q >= 2).
// Residual |W*exp_q(W) - z| <= 1e-12 * max(1, |z|).
// Throws std::domain_error below the branch point and NumericError if the
// iteration cap is hit.
double lambert_tsallis_wq(const WqQuery& query);
inline double lambert_tsallis_wq(double q, double z) {
  return lambert_tsallis_wq(WqQuery{q, z});
}

// Bracketed root of f on [lo, hi]: bisection with a guaranteed sign-change
// precondition (BracketError otherwise), iteration cap 200, absolute
// x-tolerance tol.
double solve_monotone_root(const std::function<double(double)>& f, double lo,
                           double hi, double tol = 1e-12);

}  // namespace qsdc
