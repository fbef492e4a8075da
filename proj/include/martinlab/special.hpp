#pragma once

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <cstddef>
#include <span>

namespace martinlab {

inline double gamma_fn(double x) { return boost::math::tgamma(x); }

inline double beta_fn(double a, double b) { return boost::math::beta(a, b); }

/// Regularized incomplete beta I_x(a, b).
inline double reg_inc_beta(double a, double b, double x) { return boost::math::ibeta(a, b, x); }

/// B(a, b) * integral_0^z s^(a-1) (1+s)^(-a-b) ds, evaluated through the
/// complemented incomplete beta so that huge z loses no precision.
inline double inc_beta_ratio_form(double a, double b, double z) {
  if (z <= 0.0) return 0.0;
  const double w = 1.0 / (1.0 + z);  // = 1 - z/(1+z), accurate for all z
  return beta_fn(a, b) * boost::math::ibetac(b, a, w);
}

/// Complement of the asymptotic Kolmogorov distribution,
/// Q(lambda) = 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 lambda^2).
inline double kolmogorov_q(double lambda) {
  if (lambda < 1e-8) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::min(1.0, std::max(0.0, 2.0 * sum));
}

/// One-sample Kolmogorov-Smirnov p-value for `sorted` against the CDF values
/// `cdf_at_sorted` (asymptotic formula with the Stephens small-sample tweak).
inline double ks_p_value(std::span<const double> cdf_at_sorted) {
  const std::size_t n = cdf_at_sorted.size();
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf_at_sorted[i];
    const double hi = static_cast<double>(i + 1) / static_cast<double>(n) - f;
    const double lo = f - static_cast<double>(i) / static_cast<double>(n);
    d = std::max(d, std::max(hi, lo));
  }
  const double sn = std::sqrt(static_cast<double>(n));
  return kolmogorov_q((sn + 0.12 + 0.11 / sn) * d);
}

}  // namespace martinlab
