#include "qsdc/reconstruct.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qsdc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

void validate_sample_set(const SampleSet& samples) {
  if (!(samples.duration > 0.0) || !std::isfinite(samples.duration)) {
    throw std::invalid_argument("sample set: duration must be > 0");
  }
  double prev = -1.0;
  for (const SamplePoint& p : samples.points) {
    if (!(p.time >= 0.0) || !(p.time <= samples.duration)) {
      throw std::invalid_argument("sample set: time outside [0, duration]");
    }
    if (!(p.time > prev)) {
      throw std::invalid_argument("sample set: times must strictly increase");
    }
    if (!std::isfinite(p.value)) {
      throw std::invalid_argument("sample set: value not finite");
    }
    prev = p.time;
  }
}

double average_rate(const SampleSet& samples) {
  return static_cast<double>(samples.points.size()) / samples.duration;
}

bool nyquist_ok(const SampleSet& samples, double f_base) {
  if (!(f_base > 0.0)) {
    throw std::invalid_argument("nyquist_ok: f_base must be > 0");
  }
  return average_rate(samples) > f_base;
}

ReconstructionResult reconstruct_signal(const SampleSet& samples, double f_max,
                                        double frequency_grid_step,
                                        const ReconstructionOptions& options) {
  if (!(f_max > 0.0) || !std::isfinite(f_max)) {
    throw std::invalid_argument("reconstruct_signal: f_max must be > 0");
  }
  if (!(frequency_grid_step > 0.0) || !std::isfinite(frequency_grid_step)) {
    throw std::invalid_argument(
        "reconstruct_signal: frequency_grid_step must be > 0");
  }

  ReconstructionResult res;
  res.estimate.f_max = f_max;

  // Round the band edge up by half a ulp-ish margin so that on-grid
  // frequencies equal to f_max survive floating division.
  const int n_freq = static_cast<int>(
      std::floor(f_max / frequency_grid_step * (1.0 + 1e-12)));
  const int n_basis = 1 + 2 * n_freq;  // DC + cos/sin per frequency
  if (n_basis > options.max_basis) {
    throw std::invalid_argument(
        "reconstruct_signal: basis size exceeds max_basis");
  }

  const auto m = static_cast<Eigen::Index>(samples.points.size());
  if (m == 0) {
    res.relative_residual = std::numeric_limits<double>::infinity();
    res.ok = false;
    res.diagnostic = "empty sample set";
    return res;
  }
  if (m < n_basis) {
    res.relative_residual = std::numeric_limits<double>::infinity();
    res.ok = false;
    res.diagnostic = "underdetermined: fewer samples than basis functions";
    return res;
  }

  Eigen::MatrixXd design(m, n_basis);
  Eigen::VectorXd values(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double t = samples.points[static_cast<std::size_t>(i)].time;
    values(i) = samples.points[static_cast<std::size_t>(i)].value;
    design(i, 0) = 1.0;
    for (int k = 1; k <= n_freq; ++k) {
      const double arg = kTwoPi * (k * frequency_grid_step) * t;
      design(i, 2 * k - 1) = std::cos(arg);
      design(i, 2 * k) = std::sin(arg);
    }
  }

  Eigen::MatrixXd normal(n_basis, n_basis);
  normal.setZero();
  normal.selfadjointView<Eigen::Lower>().rankUpdate(design.transpose());
  const double ridge = options.ridge_scale * normal.diagonal().maxCoeff();
  normal.diagonal().array() += ridge;

  Eigen::LDLT<Eigen::MatrixXd> ldlt(normal);
  const Eigen::VectorXd diag = ldlt.vectorD();
  const double d_min = diag.minCoeff();
  const double d_max = diag.maxCoeff();
  const bool conditioning_ok =
      ldlt.info() == Eigen::Success && d_min > 0.0 &&
      d_min >= options.cond_floor * d_max;

  const Eigen::VectorXd coeff = ldlt.solve(design.transpose() * values);
  const double misfit = (design * coeff - values).norm();
  const double scale = values.norm();
  res.relative_residual = misfit / std::max(scale, 1e-300);

  res.estimate.components.reserve(static_cast<std::size_t>(n_freq) + 1);
  if (coeff(0) != 0.0) {
    res.estimate.components.push_back(Tone{0.0, coeff(0), 0.0});
  }
  for (int k = 1; k <= n_freq; ++k) {
    // a*cos + b*sin = |c| * cos(arg - atan2(b, a)) with c = a + ib.
    const double a = coeff(2 * k - 1);
    const double b = coeff(2 * k);
    const double amp = std::hypot(a, b);
    if (amp == 0.0) continue;
    res.estimate.components.push_back(
        Tone{k * frequency_grid_step, amp, std::atan2(-b, a)});
  }

  const bool residual_ok = res.relative_residual <= options.epsilon_residual;
  res.ok = residual_ok && conditioning_ok;
  if (res.ok) {
    res.diagnostic = "ok";
  } else if (!conditioning_ok) {
    res.diagnostic = "ill-conditioned basis (rank or conditioning failure)";
  } else {
    res.diagnostic = "residual above epsilon";
  }
  return res;
}

bool compare_decoy(const ReconstructionResult& result,
                   const BandlimitedSignal& disclosed,
                   std::span<const double> grid, double match_threshold) {
  if (!result.ok) return false;
  const double rms = signal_rms(disclosed);
  const double rmse = signal_rmse(result.estimate, disclosed, grid);
  return rmse <= match_threshold * rms;
}

}  // namespace qsdc
