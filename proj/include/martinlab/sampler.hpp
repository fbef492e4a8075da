#pragma once

#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <vector>

#include <omp.h>

#include "martinlab/geometry.hpp"
#include "martinlab/rng.hpp"
#include "martinlab/stable_kernels.hpp"
#include "martinlab/vec.hpp"

namespace martinlab {

/// One exact exit sample of the walk.
struct WalkResult {
  Vec exit_point;
  double time_weight = 0.0;  // unbiased sample of E_x tau_D
  int steps = 0;
  bool capped = false;  // step budget hit; exit_point is the last interior point
};

/// Monte Carlo result.  n is the number of samples that entered the mean.
struct Estimate {
  double mean = 0.0;
  double se = 0.0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
};

struct WalkParams {
  int max_steps = 10000;
  /// Shrink factor applied to the inscribed radius (1 is exact for jump
  /// processes; < 1 available for variance studies).
  double shrink = 1.0;
  /// A walk this close to a removed point is declared absorbed there: the
  /// remaining expected time is O(absorb_radius^alpha) and, for non-polar
  /// punctures, the escape probability is O(absorb_radius^(alpha-1)).
  double absorb_radius = 1e-14;
  /// Estimates abort when more than this fraction of walks is capped.
  double max_capped_fraction = 1e-3;
};

/// Worker-count control for the estimators.  0 means hardware parallelism.
/// Results never depend on this value.
void set_threads(int n);
int threads();

namespace detail {

int resolved_threads();

}  // namespace detail

/// Runs fn(i) for i in [0, n), in parallel at the outermost level only.
/// Exceptions are captured and rethrown after the loop.
template <class F>
void parallel_for(std::int64_t n, F&& fn) {
  std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic, 16) num_threads(detail::resolved_threads()) \
    if (omp_get_active_level() == 0)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
#pragma omp critical(martinlab_parallel_for_err)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

/// Serial two-pass mean / standard error over `values`, skipping NaNs
/// (discarded samples).  Throws reliability_error when the discard fraction
/// exceeds `max_discard_fraction`.
Estimate summarize(const std::vector<double>& values, std::uint64_t seed,
                   double max_discard_fraction, const char* op_name);

/// One walk-on-spheres trajectory through `dom` started at `x`.  Each step
/// samples the exact exit of the ball B(x_k, shrink * inscribed_radius(x_k))
/// and accrues that ball's expected exit time, so exit_point has exactly the
/// law of the exit position and time_weight is an unbiased sample of E_x tau.
WalkResult walk_exit(const ProcessSpec& spec, const Domain& dom, const Vec& x, Rng& rng,
                     const WalkParams& params = {});

/// Function defined on the complement of the domain (exterior data).
using ExteriorFn = std::function<double(const Vec&)>;

/// Mean of h at the exit position over n independent walks: the regular
/// harmonic extension of h, evaluated at x.
Estimate estimate_harmonic(const ProcessSpec& spec, const Domain& dom, const ExteriorFn& h,
                           const Vec& x, std::uint64_t n, StreamId stream,
                           const WalkParams& params = {});

/// Mean accumulated time weight over n walks: estimates E_x tau_D.
Estimate estimate_exit_time(const ProcessSpec& spec, const Domain& dom, const Vec& x,
                            std::uint64_t n, StreamId stream, const WalkParams& params = {});

struct GreenEstimate {
  Estimate est;
  double cap = std::numeric_limits<double>::infinity();
  /// Mean clipped-off mass: the estimator under-shoots G_D(x, y) by exactly
  /// the expectation this estimates.
  double clipped_mass = 0.0;
};

/// Occupation-density estimator: per walk, sums the step-ball Green function
/// at y over steps whose ball contains y, each term clipped at `cap`.
/// Pass cap = NaN to calibrate it from a pilot run (99.9th percentile).
GreenEstimate estimate_green(const ProcessSpec& spec, const Domain& dom, const Vec& x,
                             const Vec& y, std::uint64_t n, StreamId stream,
                             double cap = std::numeric_limits<double>::quiet_NaN(),
                             const WalkParams& params = {});

}  // namespace martinlab
