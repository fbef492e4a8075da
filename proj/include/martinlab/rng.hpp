#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "martinlab/vec.hpp"

namespace martinlab {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  return splitmix64(s);
}

}  // namespace detail

/// xoshiro256++ with hand-rolled distributions.  Everything a stream produces
/// is a pure function of its seed words, so estimators built on per-task
/// substreams are reproducible independently of thread scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0x853c49e6748fea9bULL) {
    std::uint64_t s = seed;
    for (auto& w : s_) w = detail::splitmix64(s);
  }

  Rng(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = detail::mix(a, b);
    for (auto& w : s_) w = detail::splitmix64(s);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1).
  double uniform_pos() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }

  /// Standard normal (Box-Muller, one value per pair of uniforms).
  double normal() {
    double u1 = uniform_pos();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Exponential with unit rate.
  double exponential() { return -std::log(uniform_pos()); }

  /// Gamma(shape, 1) by Marsaglia-Tsang, boosted below shape 1.
  double gamma(double shape) {
    if (shape < 1.0) {
      double u = uniform_pos();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / (3.0 * std::sqrt(d));
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform_pos();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  /// Beta(a, b) from two Gamma variates.
  double beta(double a, double b) {
    const double x = gamma(a);
    const double y = gamma(b);
    return x / (x + y);
  }

  /// Symmetric alpha-stable variate with characteristic function
  /// exp(-|xi|^alpha) (Chambers-Mallows-Stuck).
  double stable_symmetric(double alpha) {
    const double v = std::numbers::pi * (uniform() - 0.5);
    if (alpha == 1.0) return std::tan(v);
    const double w = exponential();
    const double a = std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha);
    const double b = std::pow(std::cos(v - alpha * v) / w, (1.0 - alpha) / alpha);
    return a * b;
  }

  /// One-sided stable variate with Laplace transform exp(-lambda^b), 0 < b < 1
  /// (Kanter's representation).
  double stable_one_sided(double b) {
    const double u = std::numbers::pi * uniform_pos();
    const double w = exponential();
    const double a = std::pow(std::sin(b * u), b / (1.0 - b)) * std::sin((1.0 - b) * u) /
                     std::pow(std::sin(u), 1.0 / (1.0 - b));
    return std::pow(a / w, (1.0 - b) / b);
  }

  /// Uniform direction on the unit sphere in R^d.
  Vec unit_vector(int d) {
    Vec u(d);
    if (d == 1) {
      u[0] = uniform() < 0.5 ? -1.0 : 1.0;
      return u;
    }
    if (d == 2) {
      const double t = 2.0 * std::numbers::pi * uniform();
      u[0] = std::cos(t);
      u[1] = std::sin(t);
      return u;
    }
    for (;;) {
      double s = 0.0;
      for (int i = 0; i < d; ++i) {
        u[i] = normal();
        s += u[i] * u[i];
      }
      if (s > 0.0) {
        u *= 1.0 / std::sqrt(s);
        return u;
      }
    }
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> s_{};
};

/// Address of a reproducible substream: a master seed plus a path of child
/// indices folded into a single word.  stream(seed, i) for walk i, further
/// children for nested estimators.
struct StreamId {
  std::uint64_t seed = 0;
  std::uint64_t path = 0;

  StreamId child(std::uint64_t k) const { return {seed, detail::mix(path, k)}; }
  Rng rng() const { return Rng(seed, path); }
};

}  // namespace martinlab
