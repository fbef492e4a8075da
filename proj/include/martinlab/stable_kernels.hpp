#pragma once

#include "martinlab/rng.hpp"
#include "martinlab/vec.hpp"

namespace martinlab {

/// Isotropic alpha-stable process in R^d: jump intensity
/// nu(x, y) = levy_norm * |x - y|^(-d-alpha), normalized so the
/// characteristic exponent is exactly |xi|^alpha.
struct ProcessSpec {
  int d = 1;
  double alpha = 1.0;
  double levy_norm = 0.0;

  /// Builds the spec and fills levy_norm from the closed form
  /// alpha 2^(alpha-1) Gamma((d+alpha)/2) / (pi^(d/2) Gamma(1-alpha/2)).
  static ProcessSpec isotropic(int d, double alpha);

  /// The ball Green function below is implemented for the recurrent-free
  /// single-branch case only.
  bool supports_ball_green() const { return alpha < static_cast<double>(d); }
};

/// Surface area of the unit sphere in R^d (2 when d = 1).
double sphere_area(int d);

/// Jump intensity nu(x, y); throws std::domain_error when x == y.
double levy_density(const ProcessSpec& spec, const Vec& x, const Vec& y);

/// Total intensity of jumps of length > r:
/// levy_norm * sphere_area(d) * r^(-alpha) / alpha.
double levy_tail_mass(const ProcessSpec& spec, double r);

/// Tight two-sided comparability constant of nu(x, .) against nu(x0, .) over
/// x in B(x0, r), |y - x0| >= R: equals (R / (R - r))^(d + alpha).
double levy_comparability(const ProcessSpec& spec, double r, double R);

/// Exit density of B(0, r) started at x (|x| < r), evaluated at y (|y| > r).
double ball_poisson_kernel(const ProcessSpec& spec, double r, const Vec& x, const Vec& y);

/// Expected exit time of B(0, r) started at x, |x| <= r.
double ball_exit_time(const ProcessSpec& spec, double r, const Vec& x);

/// Expected exit time from the center; equals ball_exit_time at x = 0.
double ball_exit_time_center(const ProcessSpec& spec, double r);

/// Green function of B(0, r) at (x, y), alpha < d only.
double ball_green(const ProcessSpec& spec, double r, const Vec& x, const Vec& y);

/// Radial factor t = |Y| / r of the exit position of a ball started at its
/// center.  Law: 1 - 1/t^2 ~ Beta(1 - alpha/2, alpha/2); dimension-free.
double sample_ball_exit_radius_factor(const ProcessSpec& spec, Rng& rng);

/// The Beta(1 - alpha/2, alpha/2) variate driving the radial factor, drawn
/// from the same stream layout as sample_ball_exit_radius_factor.  Kept
/// separate because near alpha = 2 the factor t collapses onto 1 in double
/// precision while the Beta variate stays fully resolved.
double sample_ball_exit_beta(const ProcessSpec& spec, Rng& rng);

/// CDF of the radial factor above: P(t <= T) = I_(1-1/T^2)(1-alpha/2, alpha/2).
double ball_exit_radial_cdf(const ProcessSpec& spec, double t);

/// Exit position of B(0, r) started at 0; |result| > r almost surely.
Vec sample_ball_exit(const ProcessSpec& spec, double r, Rng& rng);

}  // namespace martinlab
