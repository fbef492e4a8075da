#pragma once

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

namespace martinlab {

inline constexpr double kQuadTol = 1e-8;  // default absolute tolerance

/// Adaptive integral over a finite interval; robust to integrable endpoint
/// singularities (tanh-sinh).
template <class F>
double integrate(F&& f, double a, double b, double tol = kQuadTol) {
  if (!(a < b)) return 0.0;
  boost::math::quadrature::tanh_sinh<double> q;
  // tanh_sinh's termination test is relative; feed it the target relative to
  // a unit scale and let callers split integrals where cancellation matters.
  return q.integrate(f, a, b, tol);
}

/// Adaptive Gauss-Kronrod for smooth (possibly oscillatory) integrands.
template <class F>
double integrate_gk(F&& f, double a, double b, double tol = kQuadTol, int max_depth = 15) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, tol);
}

/// Integral over [a, infinity) (exp-sinh).
template <class F>
double integrate_tail(F&& f, double a, double tol = kQuadTol) {
  boost::math::quadrature::exp_sinh<double> q;
  return q.integrate([&](double u) { return f(a + u); }, tol);
}

}  // namespace martinlab
