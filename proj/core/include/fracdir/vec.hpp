#pragma once

#include <array>
#include <cmath>
#include <initializer_list>
#include <string>

#include "fracdir/error.hpp"

namespace fracdir {

// Point in R^d for d in {1,2,3}. Fixed inline storage; the unused trailing
// coordinates are kept at zero so norms and dot products can ignore dim.
struct Vec {
  int dim = 1;
  std::array<double, 3> c{0.0, 0.0, 0.0};

  Vec() = default;
  explicit Vec(double x) : dim(1), c{x, 0.0, 0.0} {}
  Vec(double x, double y) : dim(2), c{x, y, 0.0} {}
  Vec(double x, double y, double z) : dim(3), c{x, y, z} {}

  static Vec zero(int d) {
    check_dim(d);
    Vec v;
    v.dim = d;
    return v;
  }

  static void check_dim(int d) {
    if (d < 1 || d > 3)
      throw InputError("Vec: dimension must be 1, 2 or 3, got " + std::to_string(d));
  }

  double& operator[](int i) { return c[static_cast<size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<size_t>(i)]; }

  double norm2() const { return c[0] * c[0] + c[1] * c[1] + c[2] * c[2]; }
  double norm() const { return std::sqrt(norm2()); }
};

inline Vec operator+(Vec a, const Vec& b) {
  for (int i = 0; i < 3; ++i) a.c[static_cast<size_t>(i)] += b.c[static_cast<size_t>(i)];
  return a;
}

inline Vec operator-(Vec a, const Vec& b) {
  for (int i = 0; i < 3; ++i) a.c[static_cast<size_t>(i)] -= b.c[static_cast<size_t>(i)];
  return a;
}

inline Vec operator*(double s, Vec a) {
  for (auto& x : a.c) x *= s;
  return a;
}

inline double dot(const Vec& a, const Vec& b) {
  return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2];
}

inline double distance(const Vec& a, const Vec& b) { return (a - b).norm(); }

} // namespace fracdir
