#include "qsdc/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qsdc/errors.hpp"

namespace qsdc {

namespace {

constexpr int kIterationCap = 200;
constexpr double kResidualScale = 1e-12;

// x * exp_q(x), the map W_q inverts. Strictly increasing on the principal
// branch [-1/(2-q), domain end); for q >= 2 strictly increasing on all of
// the domain.
double wq_forward(double q, double x) { return x * q_exponential(q, x); }

// Expansion-loop variant: a pole hit through rounding counts as +inf.
double wq_forward_or_inf(double q, double x) {
  try {
    return wq_forward(q, x);
  } catch (const std::domain_error&) {
    return std::numeric_limits<double>::infinity();
  }
}

// d/dx [x * exp_q(x)] = exp_q(x)^q * (1 + (2-q)x)
double wq_forward_derivative(double q, double x) {
  return std::pow(q_exponential(q, x), q) * (1.0 + (2.0 - q) * x);
}

}  // namespace

double q_exponential(double q, double x) {
  if (!std::isfinite(q) || !std::isfinite(x)) {
    throw std::invalid_argument("q_exponential: arguments must be finite");
  }
  if (q == 1.0) return std::exp(x);
  const double u = (1.0 - q) * x;
  if (1.0 + u <= 0.0) {
    throw std::domain_error("q_exponential: 1 + (1-q)x <= 0");
  }
  // log1p keeps the q -> 1 limit smooth.
  return std::exp(std::log1p(u) / (1.0 - q));
}

double wq_branch_min_argument(double q) {
  if (q > 2.0) return -std::numeric_limits<double>::infinity();
  if (q == 2.0) return -1.0;  // open infimum: x/(1-x) -> -1 as x -> -inf
  const double x_star = -1.0 / (2.0 - q);
  return wq_forward(q, x_star);
}

double lambert_tsallis_wq(const WqQuery& query) {
  const double q = query.q;
  const double z = query.z;
  if (!std::isfinite(q) || !std::isfinite(z)) {
    throw std::invalid_argument("lambert_tsallis_wq: arguments must be finite");
  }
  if (z == 0.0) return 0.0;

  // Domain end of exp_q for q > 1 (pole of the forward map).
  const bool has_cap = q > 1.0;
  const double x_cap =
      has_cap ? 1.0 / (q - 1.0) : std::numeric_limits<double>::infinity();

  double lo, hi;
  if (z > 0.0) {
    lo = 0.0;
    hi = has_cap ? 0.5 * x_cap : 1.0;
    int grow = 0;
    while (wq_forward_or_inf(q, hi) < z) {
      hi = has_cap ? 0.5 * (hi + x_cap) : 2.0 * hi;
      if (++grow > kIterationCap) {
        throw NumericError("lambert_tsallis_wq: bracket expansion failed");
      }
    }
  } else {
    if (q < 2.0) {
      const double z_min = wq_branch_min_argument(q);
      if (z < z_min) {
        throw std::domain_error(
            "lambert_tsallis_wq: z below the principal-branch minimum");
      }
      lo = -1.0 / (2.0 - q);  // branch point, f(lo) = z_min <= z
      hi = 0.0;
    } else {
      if (q == 2.0 && z <= -1.0) {
        throw std::domain_error("lambert_tsallis_wq: W_2 requires z > -1");
      }
      hi = 0.0;
      lo = -1.0;
      int grow = 0;
      while (wq_forward(q, lo) > z) {
        lo *= 2.0;
        if (++grow > kIterationCap) {
          throw NumericError("lambert_tsallis_wq: bracket expansion failed");
        }
      }
    }
  }

  // Bisection on the increasing forward map.
  for (int i = 0; i < kIterationCap; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval collapsed
    if (wq_forward(q, mid) < z) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double w = 0.5 * (lo + hi);
  double best_w = w;
  double best_residual = std::abs(wq_forward(q, w) - z);

  // Newton polish toward ulp-level residual; bisection already localized
  // the root, so a few guarded steps suffice. Adjacent-double oscillation
  // is possible right at the root, hence the best-iterate tracking.
  for (int i = 0; i < 4; ++i) {
    const double fw = wq_forward(q, w) - z;
    const double dw = wq_forward_derivative(q, w);
    if (!std::isfinite(dw) || dw <= 0.0) break;
    const double step = fw / dw;
    const double next = w - step;
    if (!std::isfinite(next) || next <= lo - (hi - lo) ||
        next >= hi + (hi - lo)) {
      break;
    }
    if (has_cap && next >= x_cap) break;
    if (q < 2.0 && next < -1.0 / (2.0 - q)) break;
    w = next;
    const double residual = std::abs(wq_forward(q, w) - z);
    if (residual < best_residual) {
      best_residual = residual;
      best_w = w;
    }
    if (step == 0.0) break;
  }

  // The root may fall between representable doubles; where the forward map
  // is steep the attainable residual is bounded below by |f'(w)| * ulp(w).
  const double attainable =
      4.0 * std::abs(wq_forward_derivative(q, best_w) * best_w) *
      std::numeric_limits<double>::epsilon();
  if (best_residual >
      kResidualScale * std::max(1.0, std::abs(z)) + attainable) {
    throw NumericError("lambert_tsallis_wq: residual check failed");
  }
  return best_w;
}

double solve_monotone_root(const std::function<double(double)>& f, double lo,
                           double hi, double tol) {
  if (!(lo < hi)) {
    throw std::invalid_argument("solve_monotone_root: requires lo < hi");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("solve_monotone_root: requires tol > 0");
  }
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    throw BracketError("solve_monotone_root: no sign change on [lo, hi]");
  }
  for (int i = 0; i < kIterationCap && (hi - lo) > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace qsdc
