#pragma once

#include <functional>
#include <vector>

#include "fracdir/vec.hpp"

namespace fracdir {

// Far-field behavior of a scalar field. Integrators use this to decide how to
// treat the tail of an unbounded integration region.
enum class Decay {
  CompactSupport,  // identically zero outside ball(support_center, support_radius)
  PowerLaw,        // |f(x)| <= bound * |x|^{-decay_exponent} once |x| >= far_radius
  Bounded,         // |f| <= bound everywhere; no decay assumed (trig fields etc.)
};

// Sphere (a point when radius == 0) across which a field loses smoothness or
// switches branch. Radial quadratures split their panels at the distances
// induced by these surfaces.
struct KinkSphere {
  Vec center;
  double radius = 0.0;
};

struct ScalarField {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;  // empty when no closed form is known
  int dim = 1;
  Decay decay = Decay::Bounded;
  double bound = 1.0;                 // sup |f|, or the PowerLaw prefactor
  Vec support_center = Vec::zero(1);  // CompactSupport only
  double support_radius = 0.0;        // CompactSupport only
  double decay_exponent = 0.0;        // PowerLaw only
  double far_radius = 1.0;            // PowerLaw: radius past which the envelope holds
  // When positive, asserts the field oscillates around zero in the far field
  // with (quasi-)period no shorter than this, so tail integrals against
  // monotone kernels cancel at the integration-by-parts rate. Zero means no
  // such structure is claimed. Trig builders set it to their period.
  double variation_scale = 0.0;
  std::vector<KinkSphere> kinks;

  double operator()(const Vec& x) const { return value(x); }
  bool has_gradient() const { return static_cast<bool>(gradient); }
};

// Smooth bump: amplitude * exp(1 - 1/(1 - |x-c|^2/r^2)) inside ball(c, r),
// zero outside. C^infinity on all of R^d, peak value = amplitude at c.
ScalarField bump_field(const Vec& center, double radius, double amplitude = 1.0);

// amplitude * cos(k . x). Bounded, entire.
ScalarField cosine_field(const Vec& wave_vector, double amplitude = 1.0);

// (scale^2 + |x|^2)^{-exponent/2}. Smooth, PowerLaw tail |x|^{-exponent}.
// Requires exponent > 0.
ScalarField power_tail_field(int dim, double exponent, double scale = 1.0);

// (1 - |x|^2)_+^{alpha/2}: the barrier whose fractional Laplacian of order
// alpha is constant inside the unit ball. Hoelder but not C^1 at |x| = 1.
ScalarField stable_barrier_field(int dim, double alpha);

// Pointwise combinations. Gradients propagate when both operands have one.
ScalarField scale_field(double c, ScalarField f);
ScalarField add_fields(ScalarField f, ScalarField g);

// Exterior condition for the Dirichlet problem. Exactly one branch is active.
enum class ExteriorKind { ClosedForm, PointMass, TimeDependent };

struct ExteriorData {
  ExteriorKind kind = ExteriorKind::ClosedForm;
  ScalarField field;                 // ClosedForm: g as a function on the exterior
  Vec atom_location = Vec::zero(1);  // PointMass: weight * delta at this point
  double atom_weight = 1.0;
  std::function<double(double, const Vec&)> time_value;  // TimeDependent: g(t, x)

  static ExteriorData closed_form(ScalarField g);
  static ExteriorData point_mass(const Vec& location, double weight);
  static ExteriorData time_dependent(std::function<double(double, const Vec&)> g);
};

}  // namespace fracdir
