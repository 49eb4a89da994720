#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fracdir/error.hpp"

namespace fracdir {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

// Adaptive Gauss-Kronrod on a finite interval.
inline QuadResult gk_integrate(const std::function<double(double)>& f, double a, double b,
                               double rel_tol = 1e-10, int max_depth = 15) {
  if (a == b) return {0.0, 0.0};
  double err = 0.0;
  double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, max_depth, rel_tol, &err);
  return {v, err};
}

// Fixed 16-point Gauss-Legendre, no error estimate. Cheap workhorse for
// panels known to be smooth.
inline double gl16(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 16>::integrate(f, a, b);
}

namespace detail {

// One non-adaptive GK15 pass. Boost reports the embedded error estimate in
// the unit-interval frame, so it has to be rescaled by (b - a) / 2 before it
// can be compared against anything in integral units.
inline QuadResult gk15_once(const std::function<double(double)>& f, double a, double b) {
  double err = 0.0, l1 = 0.0;
  double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0,
                                                                           &err, &l1);
  double scale = 0.5 * (b - a);
  return {v, std::max(err * scale, 2.2e-16 * l1)};
}

}  // namespace detail

// Adaptive GK15 with the acceptance test done in integral units: a node is
// accepted when its error estimate is below rel_tol * |value| or below the
// absolute floor, whichever is larger. The floor is what keeps panels whose
// integral is tiny (cancellation, or a sliver of a much larger whole) from
// recursing to full depth chasing a relative target that rounding cannot
// reach; callers budget it from the error they already tolerate elsewhere.
inline QuadResult gk_integrate_abs(const std::function<double(double)>& f, double a, double b,
                                   double rel_tol, double abs_floor, int max_depth) {
  if (!(b > a)) return {0.0, 0.0};
  QuadResult q = detail::gk15_once(f, a, b);
  if (q.error <= std::max(std::fabs(q.value) * rel_tol, abs_floor) || max_depth <= 0) return q;
  double mid = 0.5 * (a + b);
  QuadResult l = gk_integrate_abs(f, a, mid, rel_tol, 0.5 * abs_floor, max_depth - 1);
  QuadResult r = gk_integrate_abs(f, mid, b, rel_tol, 0.5 * abs_floor, max_depth - 1);
  return {l.value + r.value, l.error + r.error};
}

inline std::vector<double> geometric_grid(double lo, double hi, int count) {
  if (!(lo > 0) || !(hi > lo) || count < 2)
    throw InputError("geometric_grid: need 0 < lo < hi and count >= 2");
  std::vector<double> g(static_cast<std::size_t>(count));
  double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
  return g;
}

// Geometric (octave) shell integration of h over s in (0, s_outer], where the
// outer limit may be infinite. Each shell [s/2, s] is integrated in the log
// coordinate, which resolves power-law behaviour at both ends.
//
// Termination:
//   * a sweep stops once `consecutive` shells in a row contribute less than
//     stop_rel of the running total, counted only after the sweep has seen a
//     nonzero shell (so support deeper in is not missed);
//   * `growing_limit` consecutive growing shells raise DivergenceError when
//     detect_divergence is set (a hump inside the sweep range causes shorter
//     growth runs; a divergent power law grows without end);
//   * exhausting max_shells raises ToleranceError if anything nonzero was
//     seen, and otherwise returns 0 (identically-zero integrand).
//
// The stop rule assumes the integrand has no gap of zero shells wider than
// `consecutive` octaves inside its support.
struct ShellOptions {
  double scale = 1.0;            // first shell is [scale/2, scale]
  double s_outer = -1.0;         // upper integration limit; <0 means infinite
  double stop_rel = 1e-12;       // relative contribution threshold
  int consecutive = 3;           // shells below threshold required to stop
  int max_shells = 160;          // per direction
  int growing_limit = 16;
  bool detect_divergence = true;
  double gk_tol = 1e-9;
  int gk_depth = 10;
};

struct ShellSum {
  double value = 0.0;
  double error = 0.0;
  int shells_in = 0;   // shells used going toward s = 0
  int shells_out = 0;  // shells used going outward
  std::vector<std::pair<double, double>> contributions; // (shell upper edge, value)
};

inline ShellSum shell_integrate(const std::function<double(double)>& h, ShellOptions opt) {
  if (!(opt.scale > 0)) throw InputError("shell_integrate: scale must be positive");
  if (opt.s_outer > 0 && opt.scale > opt.s_outer) opt.scale = opt.s_outer;
  ShellSum out;

  auto shell_value = [&](double lo, double hi) -> QuadResult {
    auto g = [&](double u) {
      double s = std::exp(u);
      return h(s) * s;
    };
    return gk_integrate(g, std::log(lo), std::log(hi), opt.gk_tol, opt.gk_depth);
  };

  auto sweep = [&](bool inward) -> int {
    int below = 0, growing = 0, used = 0;
    bool seen_nonzero = false;
    double prev_mag = -1.0;
    double lo = inward ? opt.scale * 0.5 : opt.scale;
    double hi = inward ? opt.scale : opt.scale * 2.0;

    for (int k = 0; k < opt.max_shells; ++k) {
      double shell_lo = lo, shell_hi = hi;
      bool clipped = false;
      if (!inward && opt.s_outer > 0) {
        if (shell_lo >= opt.s_outer) break;
        if (shell_hi > opt.s_outer) {
          shell_hi = opt.s_outer;
          clipped = true;
        }
      }
      QuadResult q = shell_value(shell_lo, shell_hi);
      out.value += q.value;
      out.error += q.error;
      out.contributions.emplace_back(shell_hi, q.value);
      ++used;
      if (clipped) return used;

      double mag = std::fabs(q.value);
      if (mag > 0) seen_nonzero = true;

      if (prev_mag >= 0 && mag > prev_mag * 1.0000001 && mag > 0) {
        if (++growing >= opt.growing_limit && opt.detect_divergence)
          throw DivergenceError(inward
              ? "shell_integrate: contributions grow toward the boundary (divergent integral)"
              : "shell_integrate: contributions grow outward (divergent integral)");
      } else {
        growing = 0;
      }
      prev_mag = mag;

      if (seen_nonzero) {
        double tot = std::fabs(out.value);
        if (mag <= opt.stop_rel * (tot > 0 ? tot : 1.0)) {
          if (++below >= opt.consecutive) return used;
        } else {
          below = 0;
        }
      }

      if (inward) {
        hi = lo;
        lo *= 0.5;
      } else {
        lo = hi;
        hi *= 2.0;
      }
    }
    if (seen_nonzero)
      throw ToleranceError("shell_integrate: shell budget exhausted without convergence");
    return used; // identically zero as far as we looked
  };

  out.shells_in = sweep(true);
  if (!(opt.s_outer > 0) || opt.s_outer > opt.scale) out.shells_out = sweep(false);
  return out;
}

} // namespace fracdir
