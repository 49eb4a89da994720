#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <thread>
#include <vector>

#include "fracdir/geometry.hpp"
#include "fracdir/kernels.hpp"
#include "fracdir/rng.hpp"
#include "fracdir/vec.hpp"

namespace fracdir {

struct McConfig {
  std::size_t paths = 100000;
  std::uint64_t seed = 1;
  double dt = 1e-2;        // killed-path step
  int max_steps = 10000;   // per-path budget (walks and killed paths)
  int threads = 0;         // 0 = hardware concurrency
};

enum class ExitStatus { Exited, Survived, Censored };

struct ExitRecord {
  Vec position;
  double time = std::numeric_limits<double>::quiet_NaN(); // killed paths only
  int steps = 0;
  ExitStatus status = ExitStatus::Exited;
  bool has_time() const { return time == time; }
};

// Scalar draw with characteristic function exp(-|xi|^alpha) (Chambers-Mallows-Stuck).
double cms_symmetric(double alpha, RngStream& rng);

// One-sided draw with Laplace transform exp(-lambda^a), 0 < a < 1 (Kanter).
double kanter_one_sided(double a, RngStream& rng);

// Symmetric alpha-stable increment X_t with E exp(i xi . X_t) = exp(-t|xi|^alpha).
// d = 1 uses the Chambers-Mallows-Stuck transform; d >= 2 subordinates a
// Gaussian vector by a one-sided alpha/2-stable time (Kanter's sampler), which
// preserves isotropy exactly.
Vec sample_increment(const StableParams& sp, double t, RngStream& rng);

// Draw from the exact exit distribution of the ball. Started at the center
// this inverts the exit law in closed form (the squared inverse radius is
// Beta(alpha/2, 1 - alpha/2)); off-center starts are accepted by rejection
// against the center law. Returns a point strictly outside the closed ball.
Vec ball_exit_sample(const Domain& ball, const StableParams& sp, const Vec& x, RngStream& rng);

// Walk-on-spheres: repeatedly take the exact exit sample of the largest
// centered inscribed ball (radius min(d_x, radius_cap)) until the domain is
// left. Exit time is not tracked (no time record in the output). Paths that
// reach max_steps are returned as Censored.
ExitRecord walk_on_spheres(const Domain& domain, const StableParams& sp, Vec x, RngStream& rng,
                           int max_steps = 10000,
                           double radius_cap = std::numeric_limits<double>::infinity());

// Euler jump walk with step dt, killed on leaving the domain; the overshoot
// position is kept exactly. Exit time is reported as steps * dt (an O(dt)
// upward-biased estimate). horizon <= 0 means run until exit or max_steps.
// With a finite horizon, floor(horizon/dt) steps fit and a path still inside
// afterwards is Survived.
ExitRecord killed_path(const Domain& domain, const StableParams& sp, Vec x, double dt,
                       double horizon, RngStream& rng, int max_steps = 10000);

// Deterministic parallel map over path indices. Every path gets its own
// derived RNG stream keyed by (seed, index) and writes to its own slot, so
// the result is byte-identical for any thread count.
template <typename T>
std::vector<T> run_paths(std::size_t n, std::uint64_t seed, int threads,
                         const std::function<T(std::size_t, RngStream&)>& fn) {
  std::vector<T> out(n);
  if (n == 0) return out;
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t nt = threads > 0 ? static_cast<std::size_t>(threads) : (hw ? hw : 1);
  nt = std::min<std::size_t>(nt, n);
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      RngStream rng(seed, i);
      out[i] = fn(i, rng);
    }
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  std::size_t chunk = (n + nt - 1) / nt;
  for (std::size_t t = 0; t < nt; ++t) {
    std::size_t lo = t * chunk;
    std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi]() {
      for (std::size_t i = lo; i < hi; ++i) {
        RngStream rng(seed, i);
        out[i] = fn(i, rng);
      }
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

} // namespace fracdir
