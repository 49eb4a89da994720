#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "fracdir/error.hpp"
#include "fracdir/vec.hpp"

namespace fracdir {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-addressable random stream: (seed, stream_id) fully determines the
// sequence, independent of platform and of how many other streams exist.
// The variate transforms below are deliberately hand-written; the standard
// library distributions are implementation-defined and would break the
// byte-identical reproducibility contract.
class RngStream {
public:
  RngStream(uint64_t seed, uint64_t stream_id)
      : engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream_id * 0x9e3779b97f4a7c15ULL + 1))) {}

  uint64_t raw() { return engine_(); }

  // Uniform on [0,1), 53 random bits.
  double u01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1); never returns 0, safe under log().
  double u01_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * u01(); }

  double exponential() { return -std::log(u01_open()); }

  // Box-Muller, both variates used.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = u01_open();
    double v = u01_open();
    double r = std::sqrt(-2.0 * std::log(u));
    double a = 6.283185307179586476925287 * v;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Marsaglia-Tsang for shape >= 1; shapes < 1 are boosted via
  // G(a) = G(a+1) * U^{1/a}.
  double gamma(double shape) {
    if (!(shape > 0.0)) throw InputError("RngStream::gamma: shape must be > 0");
    if (shape < 1.0) {
      double g = gamma(shape + 1.0);
      return g * std::pow(u01_open(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      double u = u01_open();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double beta(double a, double b) {
    double x = gamma(a);
    double y = gamma(b);
    return x / (x + y);
  }

  // Uniform direction on the unit sphere in R^d.
  Vec direction(int d) {
    Vec::check_dim(d);
    if (d == 1) return Vec(u01() < 0.5 ? -1.0 : 1.0);
    for (;;) {
      Vec v = Vec::zero(d);
      for (int i = 0; i < d; ++i) v[i] = normal();
      double n = v.norm();
      if (n > 1e-12) return (1.0 / n) * v;
    }
  }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

} // namespace fracdir
