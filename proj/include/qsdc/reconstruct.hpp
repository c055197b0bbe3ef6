#pragma once

#include <span>
#include <string>
#include <vector>

#include "qsdc/signal.hpp"

namespace qsdc {

struct SamplePoint {
  double time = 0.0;  // seconds
  double value = 0.0;
};

// Nonuniformly timed samples of one signal over an observation window.
struct SampleSet {
  std::vector<SamplePoint> points;  // strictly increasing times in [0, duration]
  double duration = 0.0;            // seconds, > 0
};

void validate_sample_set(const SampleSet& samples);

// Average sampling rate |points| / duration.
double average_rate(const SampleSet& samples);

// Strict average-rate test against the base rate (2*f_max, or f_sub).
bool nyquist_ok(const SampleSet& samples, double f_base);

struct ReconstructionOptions {
  double epsilon_residual = 1e-3;  // relative misfit accepted as "correct"
  // Smallest acceptable d_min/d_max of the LDLT factor of the normal
  // matrix; rank-deficient fits bottom out at the ridge floor (~1e-9),
  // healthy ones sit >= ~1e-4.
  double cond_floor = 1e-5;
  double ridge_scale = 1e-9;  // ridge = ridge_scale * max normal diagonal
  int max_basis = 8192;       // parameter error above this column count
};

struct ReconstructionResult {
  BandlimitedSignal estimate;       // band-limited to f_max by construction
  double relative_residual = 0.0;   // ||fit - values|| / ||values||
  bool ok = false;
  std::string diagnostic;
};

// Ridge-regularized least squares of the sample values onto the Fourier
// basis {1, cos/sin(2*pi*k*step*t) : k*step <= f_max}. With
// frequency_grid_step = 1/duration (the natural choice) the basis spans
// the whole band-limited space on the window, and solvability of the fit
// is the average-rate sampling condition. ok requires the residual below
// epsilon_residual and acceptable conditioning; an empty sample set yields
// ok = false rather than an error.
ReconstructionResult reconstruct_signal(
    const SampleSet& samples, double f_max, double frequency_grid_step,
    const ReconstructionOptions& options = {});

// Step-5 decoy test: reconstruction succeeded AND the estimate is within
// match_threshold * rms(disclosed) of the disclosed decoy on the grid.
bool compare_decoy(const ReconstructionResult& result,
                   const BandlimitedSignal& disclosed,
                   std::span<const double> grid, double match_threshold);

}  // namespace qsdc
