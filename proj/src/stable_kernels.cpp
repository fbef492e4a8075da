#include "martinlab/stable_kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "martinlab/errors.hpp"
#include "martinlab/special.hpp"

namespace martinlab {

namespace {

constexpr double kPi = std::numbers::pi;

void require_valid(const ProcessSpec& spec) {
  if (spec.d < 1 || spec.d > kMaxDim) throw std::domain_error("ProcessSpec: d out of range");
  if (!(spec.alpha > 0.0 && spec.alpha < 2.0))
    throw std::domain_error("ProcessSpec: alpha must lie in (0, 2)");
}

// Normalizing constant of the exit density of the unit ball,
// Gamma(d/2) pi^(-d/2 - 1) sin(pi alpha / 2).
double poisson_const(const ProcessSpec& spec) {
  return gamma_fn(0.5 * spec.d) * std::pow(kPi, -0.5 * spec.d - 1.0) *
         std::sin(0.5 * kPi * spec.alpha);
}

// Expected-exit-time constant Gamma(d/2) / (2^alpha Gamma(1+alpha/2) Gamma((d+alpha)/2)).
double exit_time_const(const ProcessSpec& spec) {
  return gamma_fn(0.5 * spec.d) /
         (std::pow(2.0, spec.alpha) * gamma_fn(1.0 + 0.5 * spec.alpha) *
          gamma_fn(0.5 * (spec.d + spec.alpha)));
}

// Green function constant Gamma(d/2) / (2^alpha pi^(d/2) Gamma(alpha/2)^2).
double green_const(const ProcessSpec& spec) {
  return gamma_fn(0.5 * spec.d) /
         (std::pow(2.0, spec.alpha) * std::pow(kPi, 0.5 * spec.d) *
          std::pow(gamma_fn(0.5 * spec.alpha), 2));
}

}  // namespace

ProcessSpec ProcessSpec::isotropic(int d, double alpha) {
  ProcessSpec spec;
  spec.d = d;
  spec.alpha = alpha;
  spec.levy_norm = 0.0;
  require_valid(spec);
  spec.levy_norm = alpha * std::pow(2.0, alpha - 1.0) * gamma_fn(0.5 * (d + alpha)) /
                   (std::pow(kPi, 0.5 * d) * gamma_fn(1.0 - 0.5 * alpha));
  return spec;
}

double sphere_area(int d) {
  return 2.0 * std::pow(kPi, 0.5 * d) / gamma_fn(0.5 * d);
}

double levy_density(const ProcessSpec& spec, const Vec& x, const Vec& y) {
  require_valid(spec);
  const double r = dist(x, y);
  if (r == 0.0) throw std::domain_error("levy_density: x == y");
  return spec.levy_norm * std::pow(r, -(spec.d + spec.alpha));
}

double levy_tail_mass(const ProcessSpec& spec, double r) {
  require_valid(spec);
  if (!(r > 0.0)) throw std::domain_error("levy_tail_mass: r must be positive");
  return spec.levy_norm * sphere_area(spec.d) * std::pow(r, -spec.alpha) / spec.alpha;
}

double levy_comparability(const ProcessSpec& spec, double r, double R) {
  require_valid(spec);
  if (!(0.0 < r && r < R)) throw std::domain_error("levy_comparability: need 0 < r < R");
  return std::pow(R / (R - r), spec.d + spec.alpha);
}

double ball_poisson_kernel(const ProcessSpec& spec, double r, const Vec& x, const Vec& y) {
  require_valid(spec);
  if (!(r > 0.0)) throw std::domain_error("ball_poisson_kernel: r must be positive");
  const double nx = norm(x);
  const double ny = norm(y);
  if (!(nx < r)) throw std::domain_error("ball_poisson_kernel: |x| must be < r");
  if (!(ny > r)) throw std::domain_error("ball_poisson_kernel: |y| must be > r");
  const double ratio = (r * r - nx * nx) / (ny * ny - r * r);
  return poisson_const(spec) * std::pow(ratio, 0.5 * spec.alpha) *
         std::pow(dist(x, y), -static_cast<double>(spec.d));
}

double ball_exit_time(const ProcessSpec& spec, double r, const Vec& x) {
  require_valid(spec);
  if (!(r > 0.0)) throw std::domain_error("ball_exit_time: r must be positive");
  const double n2 = norm2(x);
  if (n2 > r * r) throw std::domain_error("ball_exit_time: |x| must be <= r");
  return exit_time_const(spec) * std::pow(std::max(0.0, r * r - n2), 0.5 * spec.alpha);
}

double ball_exit_time_center(const ProcessSpec& spec, double r) {
  require_valid(spec);
  if (!(r > 0.0)) throw std::domain_error("ball_exit_time_center: r must be positive");
  return exit_time_const(spec) * std::pow(r, spec.alpha);
}

double ball_green(const ProcessSpec& spec, double r, const Vec& x, const Vec& y) {
  require_valid(spec);
  if (!spec.supports_ball_green())
    throw capability_error("ball_green: requires alpha < d");
  if (!(r > 0.0)) throw std::domain_error("ball_green: r must be positive");
  const double nx2 = norm2(x);
  const double ny2 = norm2(y);
  if (!(nx2 < r * r) || !(ny2 < r * r))
    throw std::domain_error("ball_green: x and y must lie inside the ball");
  const double xy = dist(x, y);
  if (xy == 0.0) throw std::domain_error("ball_green: x == y");
  const double z0 = (r * r - nx2) * (r * r - ny2) / (r * r * xy * xy);
  const double a = 0.5 * spec.alpha;
  const double b = 0.5 * (spec.d - spec.alpha);
  return green_const(spec) * std::pow(xy, spec.alpha - spec.d) * inc_beta_ratio_form(a, b, z0);
}

double sample_ball_exit_radius_factor(const ProcessSpec& spec, Rng& rng) {
  // t = 1/sqrt(1 - B) with B ~ Beta(1-alpha/2, alpha/2); forming 1 - B from
  // the Gamma pair directly keeps the heavy tail free of cancellation.
  for (;;) {
    const double gx = rng.gamma(1.0 - 0.5 * spec.alpha);
    const double gy = rng.gamma(0.5 * spec.alpha);
    if (gy > 0.0) return std::sqrt((gx + gy) / gy);
  }
}

double sample_ball_exit_beta(const ProcessSpec& spec, Rng& rng) {
  for (;;) {
    const double gx = rng.gamma(1.0 - 0.5 * spec.alpha);
    const double gy = rng.gamma(0.5 * spec.alpha);
    if (gy > 0.0) return gx / (gx + gy);
  }
}

double ball_exit_radial_cdf(const ProcessSpec& spec, double t) {
  if (t <= 1.0) return 0.0;
  return reg_inc_beta(1.0 - 0.5 * spec.alpha, 0.5 * spec.alpha, 1.0 - 1.0 / (t * t));
}

Vec sample_ball_exit(const ProcessSpec& spec, double r, Rng& rng) {
  require_valid(spec);
  if (!(r > 0.0)) throw std::domain_error("sample_ball_exit: r must be positive");
  const double t = sample_ball_exit_radius_factor(spec, rng);
  return (r * t) * rng.unit_vector(spec.d);
}

}  // namespace martinlab
