#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <initializer_list>
#include <stdexcept>

namespace martinlab {

/// Hard cap on the ambient dimension; keeps points allocation-free.
inline constexpr int kMaxDim = 8;

/// Point (or displacement) in R^d with inline storage, d <= kMaxDim.
class Vec {
 public:
  Vec() = default;

  explicit Vec(int dim, double fill = 0.0) : d_(dim) {
    check_dim(dim);
    for (int i = 0; i < d_; ++i) v_[i] = fill;
  }

  Vec(std::initializer_list<double> xs) : d_(static_cast<int>(xs.size())) {
    check_dim(d_);
    int i = 0;
    for (double x : xs) v_[i++] = x;
  }

  static Vec zero(int dim) { return Vec(dim, 0.0); }

  int dim() const noexcept { return d_; }

  double operator[](int i) const {
    assert(i >= 0 && i < d_);
    return v_[i];
  }
  double& operator[](int i) {
    assert(i >= 0 && i < d_);
    return v_[i];
  }

  Vec& operator+=(const Vec& o) {
    assert(d_ == o.d_);
    for (int i = 0; i < d_; ++i) v_[i] += o.v_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    assert(d_ == o.d_);
    for (int i = 0; i < d_; ++i) v_[i] -= o.v_[i];
    return *this;
  }
  Vec& operator*=(double c) {
    for (int i = 0; i < d_; ++i) v_[i] *= c;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(double c, Vec a) { return a *= c; }
  friend Vec operator*(Vec a, double c) { return a *= c; }

  friend bool operator==(const Vec& a, const Vec& b) {
    if (a.d_ != b.d_) return false;
    for (int i = 0; i < a.d_; ++i)
      if (a.v_[i] != b.v_[i]) return false;
    return true;
  }

 private:
  static void check_dim(int dim) {
    if (dim < 0 || dim > kMaxDim) throw std::invalid_argument("Vec: dimension out of range");
  }

  std::array<double, kMaxDim> v_{};
  int d_ = 0;
};

inline double dot(const Vec& a, const Vec& b) {
  assert(a.dim() == b.dim());
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }

inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

inline double dist(const Vec& a, const Vec& b) { return norm(a - b); }

}  // namespace martinlab
