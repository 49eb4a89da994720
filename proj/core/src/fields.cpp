#include "fracdir/fields.hpp"

#include <cmath>
#include <utility>

#include "fracdir/error.hpp"

namespace fracdir {

ScalarField bump_field(const Vec& center, double radius, double amplitude) {
  if (!(radius > 0.0)) throw InputError("bump_field: radius must be positive");
  ScalarField f;
  f.dim = center.dim;
  f.decay = Decay::CompactSupport;
  f.bound = std::fabs(amplitude);
  f.support_center = center;
  f.support_radius = radius;
  f.kinks.push_back({center, radius});  // smooth there, but quadrature panels benefit
  const double r2 = radius * radius;
  f.value = [center, r2, amplitude](const Vec& x) {
    double q = (x - center).norm2() / r2;
    double rem = 1.0 - q;
    if (rem < 1e-12) return 0.0;
    return amplitude * std::exp(1.0 - 1.0 / rem);
  };
  f.gradient = [center, r2, amplitude](const Vec& x) {
    Vec d = x - center;
    double q = d.norm2() / r2;
    double rem = 1.0 - q;
    Vec g = Vec::zero(x.dim);
    if (rem < 1e-12) return g;
    double v = amplitude * std::exp(1.0 - 1.0 / rem);
    return (-2.0 * v / (rem * rem * r2)) * d;
  };
  return f;
}

ScalarField cosine_field(const Vec& wave_vector, double amplitude) {
  ScalarField f;
  f.dim = wave_vector.dim;
  f.decay = Decay::Bounded;
  f.bound = std::fabs(amplitude);
  double k = wave_vector.norm();
  if (k > 0.0) f.variation_scale = 2.0 * M_PI / k;
  f.value = [wave_vector, amplitude](const Vec& x) {
    return amplitude * std::cos(dot(wave_vector, x));
  };
  f.gradient = [wave_vector, amplitude](const Vec& x) {
    return (-amplitude * std::sin(dot(wave_vector, x))) * wave_vector;
  };
  return f;
}

ScalarField power_tail_field(int dim, double exponent, double scale) {
  Vec::check_dim(dim);
  if (!(exponent > 0.0) || !(scale > 0.0))
    throw InputError("power_tail_field: exponent and scale must be positive");
  ScalarField f;
  f.dim = dim;
  f.decay = Decay::PowerLaw;
  f.decay_exponent = exponent;
  f.far_radius = scale;
  f.bound = 1.0;  // (scale^2+|x|^2)^{-s/2} <= |x|^{-s} for every x
  const double s2 = scale * scale;
  f.value = [s2, exponent](const Vec& x) {
    return std::pow(s2 + x.norm2(), -0.5 * exponent);
  };
  f.gradient = [s2, exponent](const Vec& x) {
    double base = s2 + x.norm2();
    return (-exponent * std::pow(base, -0.5 * exponent - 1.0)) * x;
  };
  return f;
}

ScalarField stable_barrier_field(int dim, double alpha) {
  Vec::check_dim(dim);
  if (!(alpha > 0.0) || !(alpha < 2.0))
    throw InputError("stable_barrier_field: alpha must lie in (0, 2)");
  ScalarField f;
  f.dim = dim;
  f.decay = Decay::CompactSupport;
  f.bound = 1.0;
  f.support_center = Vec::zero(dim);
  f.support_radius = 1.0;
  f.kinks.push_back({Vec::zero(dim), 1.0});
  const double half = 0.5 * alpha;
  f.value = [half](const Vec& x) {
    double rem = 1.0 - x.norm2();
    return rem > 0.0 ? std::pow(rem, half) : 0.0;
  };
  f.gradient = [half, dim](const Vec& x) {
    double rem = 1.0 - x.norm2();
    if (rem <= 0.0) return Vec::zero(dim);
    return (-2.0 * half * std::pow(rem, half - 1.0)) * x;
  };
  return f;
}

ScalarField scale_field(double c, ScalarField f) {
  ScalarField out = f;
  out.bound = std::fabs(c) * f.bound;
  auto v = f.value;
  out.value = [c, v](const Vec& x) { return c * v(x); };
  if (f.has_gradient()) {
    auto g = f.gradient;
    out.gradient = [c, g](const Vec& x) { return c * g(x); };
  }
  return out;
}

ScalarField add_fields(ScalarField f, ScalarField g) {
  if (f.dim != g.dim) throw InputError("add_fields: dimension mismatch");
  ScalarField out;
  out.dim = f.dim;
  out.bound = f.bound + g.bound;
  out.kinks = f.kinks;
  out.kinks.insert(out.kinks.end(), g.kinks.begin(), g.kinks.end());
  if (f.decay == Decay::CompactSupport && g.decay == Decay::CompactSupport) {
    out.decay = Decay::CompactSupport;
    // smallest ball around f's center containing both supports
    double reach = distance(f.support_center, g.support_center) + g.support_radius;
    out.support_center = f.support_center;
    out.support_radius = std::max(f.support_radius, reach);
  } else if (f.decay == Decay::PowerLaw && g.decay == Decay::PowerLaw) {
    out.decay = Decay::PowerLaw;
    out.decay_exponent = std::min(f.decay_exponent, g.decay_exponent);
    out.far_radius = std::max(f.far_radius, g.far_radius);
  } else {
    out.decay = Decay::Bounded;
  }
  // far-field oscillation survives the sum only if the partner oscillates too
  // or vanishes at infinity
  auto decays = [](const ScalarField& h) {
    return h.decay == Decay::CompactSupport || h.decay == Decay::PowerLaw;
  };
  if (f.variation_scale > 0.0 && g.variation_scale > 0.0)
    out.variation_scale = std::max(f.variation_scale, g.variation_scale);
  else if (f.variation_scale > 0.0 && decays(g))
    out.variation_scale = f.variation_scale;
  else if (g.variation_scale > 0.0 && decays(f))
    out.variation_scale = g.variation_scale;
  auto fv = f.value, gv = g.value;
  out.value = [fv, gv](const Vec& x) { return fv(x) + gv(x); };
  if (f.has_gradient() && g.has_gradient()) {
    auto fg = f.gradient, gg = g.gradient;
    out.gradient = [fg, gg](const Vec& x) { return fg(x) + gg(x); };
  }
  return out;
}

ExteriorData ExteriorData::closed_form(ScalarField g) {
  ExteriorData e;
  e.kind = ExteriorKind::ClosedForm;
  e.field = std::move(g);
  return e;
}

ExteriorData ExteriorData::point_mass(const Vec& location, double weight) {
  ExteriorData e;
  e.kind = ExteriorKind::PointMass;
  e.atom_location = location;
  e.atom_weight = weight;
  return e;
}

ExteriorData ExteriorData::time_dependent(std::function<double(double, const Vec&)> g) {
  if (!g) throw InputError("ExteriorData: time_dependent needs a callable");
  ExteriorData e;
  e.kind = ExteriorKind::TimeDependent;
  e.time_value = std::move(g);
  return e;
}

}  // namespace fracdir
