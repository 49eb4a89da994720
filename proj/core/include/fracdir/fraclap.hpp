#pragma once

#include <cstddef>
#include <vector>

#include "fracdir/fields.hpp"
#include "fracdir/geometry.hpp"
#include "fracdir/kernels.hpp"

namespace fracdir {

struct PvOptions {
  double head_factor = 1e-4;  // inner cutoff as a fraction of the local smooth scale
  double tail_tol = 1e-9;     // absolute budget for the neglected far tail
  double panel_tol = 1e-9;    // per-panel relative quadrature tolerance
  int max_panels = 2000000;
  int azimuth_points = 32;  // d >= 2 angular resolution
  int polar_points = 16;    // d = 3 polar resolution (Gauss-Legendre)
};

struct PvResult {
  double value = 0.0;
  double error = 0.0;  // accumulated quadrature estimates plus tail bounds
};

// Pointwise operator of order alpha at x, computed from the even-symmetrized
// second difference
//     c_d  int_0^inf  r^{-1-alpha}  avg_{|w|=1} [u(x+rw) + u(x-rw) - 2 u(x)] / 2  dr
// times the sphere area, which is absolutely convergent for fields that are
// C^2 near x. Radial panels split at the distances induced by the declared
// kink spheres; the head below the inner cutoff uses a Richardson-extrapolated
// r^2 coefficient; the tail beyond the truncation radius is the exact power
// integral of -u(x) plus a rigorous bound on the rest driven by the decay
// descriptor. The error field collects quadrature estimates and tail bounds.
//
// Throws InputError when x sits on a declared kink surface (the field is not
// C^2 there), DivergenceError when a radial shell contributes more than the
// declared bound of the field permits (the field violates the growth
// restriction its descriptor claims), and ToleranceError when
// the panel budget is exhausted.
PvResult fraclap_pv(const ScalarField& field, const StableParams& sp, const Vec& x,
                    const PvOptions& opt = {});

// Uniform sample of a 1-d field on the circle [lo, hi): values[k] = u(lo + k h)
// with h = (hi - lo) / values.size(); the right endpoint is the wrap-around.
struct GridField {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> values;

  double spacing() const { return (hi - lo) / static_cast<double>(values.size()); }
  double node(std::size_t k) const { return lo + spacing() * static_cast<double>(k); }
};

// Spectral application of the operator on the circle: forward transform,
// multiply mode j by -|2 pi j / (hi - lo)|^alpha, invert. Agrees with the
// pointwise evaluator on smooth fields that vanish near the wrap-around.
// Throws ResolutionError when the field carries visible mass at the wrap-around
// (box too small) or when the top eighth of the spectrum holds more than 1e-8
// of the energy (grid too coarse). Not thread-safe (FFTW planner).
GridField fraclap_fourier(const GridField& grid, const StableParams& sp);

// Weak-solution pairing data: u given separately inside D and on the closed
// complement, against a test function supported strictly inside D.
struct PairingSpec {
  Domain domain;
  ScalarField interior;   // u on D
  ExteriorData exterior;  // u on the complement: closed form or point mass
  ScalarField test_fn;    // phi, CompactSupport with positive distance to the boundary
};

// (u, L phi)_D + (u, L phi)_{complement} with L phi evaluated by fraclap_pv.
// A point-mass exterior contributes weight * (L phi)(atom) exactly. Only d = 1
// is supported; the pairing is used by the scalar scenario checks.
// Throws DomainError when supp phi touches the boundary or the atom is not
// exterior, InputError for unsupported dimension or time-dependent data.
double distributional_pairing(const PairingSpec& spec, const StableParams& sp,
                              const PvOptions& opt = {});

}  // namespace fracdir
