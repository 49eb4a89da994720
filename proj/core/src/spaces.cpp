#include "fracdir/spaces.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "fracdir/error.hpp"
#include "fracdir/quad.hpp"
#include "fracdir/rng.hpp"
#include "fracdir/stats.hpp"

namespace fracdir {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Neumaier compensated sum; shell contributions span many orders of
// magnitude, and the dyadic value must reproduce the sum of its reported
// shells independent of order.
struct CompensatedSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double t = s + x;
    if (std::fabs(s) >= std::fabs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  double total() const { return s + c; }
};

// One boundary ray: points x = edge + dir * t carry boundary distance exactly
// t for t in (0, cap). Anchoring at the boundary point keeps the distance
// exact where coordinates alone would round it away.
struct Ray {
  double edge = 0.0;
  double dir = 1.0;
  double cap = kInf;
};

std::vector<Ray> region_rays_1d(const Domain& region) {
  switch (region.kind()) {
    case DomainKind::HalfSpace:
      return {{0.0, static_cast<double>(region.orientation()), kInf}};
    case DomainKind::Ball: {
      double c = region.center()[0], r = region.radius();
      return {{c - r, 1.0, r}, {c + r, -1.0, r}};
    }
    case DomainKind::BallComplement: {
      double c = region.center()[0], r = region.radius();
      return {{c - r, -1.0, kInf}, {c + r, 1.0, kInf}};
    }
  }
  throw InputError("region_rays_1d: unknown region kind");
}

// Distances along the ray at which a kink sphere of the field crosses it.
std::vector<double> ray_kink_cuts(const ScalarField& u, const Ray& r) {
  std::vector<double> cuts;
  for (const auto& ks : u.kinks) {
    double m = r.dir * (ks.center[0] - r.edge);
    for (double t : {m - ks.radius, m + ks.radius})
      if (t > 0.0 && t < r.cap) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

// Last distance along the ray where the field can be nonzero; kInf when the
// field has no compact support or the support never meets the ray.
double ray_support_cap(const ScalarField& u, const Ray& r) {
  if (u.decay != Decay::CompactSupport) return kInf;
  double m = r.dir * (u.support_center[0] - r.edge);
  double hi = m + u.support_radius;
  return hi > 0.0 ? hi : 0.0;  // 0 means the ray misses the support entirely
}

// Integral of G over [a, b] in the log coordinate, split at the cut points.
// The absolute floor stops the panel recursion from chasing a relative target
// on shells whose whole contribution is already negligible (derivative
// integrands carry a difference-quotient noise floor near the boundary).
QuadResult log_panel(const std::function<double(double)>& G, double a, double b,
                     const std::vector<double>& cuts, double tol, double abs_floor = 0.0) {
  QuadResult out;
  std::size_t pieces = 1;
  for (double c : cuts) pieces += (c > a && c < b) ? 1 : 0;
  double lo = a;
  auto piece = [&](double p_lo, double p_hi) {
    if (!(p_hi > p_lo)) return;
    auto g = [&](double w) {
      double t = std::exp(w);
      return G(t) * t;
    };
    QuadResult q = gk_integrate_abs(g, std::log(p_lo), std::log(p_hi), tol,
                                    abs_floor / static_cast<double>(pieces), 10);
    out.value += q.value;
    out.error += q.error;
  };
  for (double c : cuts) {
    if (c <= a || c >= b) continue;
    piece(lo, c);
    lo = c;
  }
  piece(lo, b);
  return out;
}

// Dyadic-shell integration of G over t in (0, cap), shells anchored at
// `scale`. Contributions accumulate into sum/err; `base` is the running
// magnitude of the whole norm, shared across rays so the relative stop rule
// sees the full picture. Shells that stop decaying toward the boundary (or,
// on an infinite cap, outward) raise DivergenceError; at the octave budget a
// still-decaying geometric tail is extrapolated into the sum.
void octave_sweep(const std::function<double(double)>& G, double scale, double cap,
                  const std::vector<double>& cuts, const NormOptions& opt, CompensatedSum& sum,
                  double& err, const char* toward_boundary_msg, const char* far_field_msg) {
  if (!(cap > 0.0)) return;
  if (std::isfinite(cap)) scale = std::min(scale, 0.5 * cap);

  auto run = [&](bool inward, int budget, bool detect) {
    double lo = inward ? 0.5 * scale : scale;
    double hi = inward ? scale : 2.0 * scale;
    double prev = -1.0, ratio = -1.0;
    int flat = 0, below = 0, used = 0;
    bool seen = false;
    for (int k = 0; k < budget; ++k) {
      double a = lo, b = hi;
      bool clipped = false;
      if (!inward && std::isfinite(cap)) {
        if (a >= cap) return;
        if (b > cap) {
          b = cap;
          clipped = true;
        }
      }
      QuadResult q = log_panel(G, a, b, cuts, opt.panel_tol);
      sum.add(q.value);
      err += q.error;
      ++used;
      if (clipped) return;

      double mag = std::fabs(q.value);
      double base = std::max(std::fabs(sum.total()), 1e-300);
      if (mag > 0.0) seen = true;

      if (prev > 0.0 && mag > 0.0) {
        ratio = mag / prev;
        if (detect && ratio >= opt.divergence_ratio && mag > 1e-13 * base) {
          if (++flat >= 4 && used >= 6)
            throw DivergenceError(inward ? toward_boundary_msg : far_field_msg);
        } else {
          flat = 0;
        }
      } else {
        flat = 0;
        ratio = -1.0;
      }
      prev = mag;

      if (seen && mag <= opt.shell_rel_tol * base) {
        if (++below >= 3) {
          if (ratio > 0.0 && ratio < 1.0) err += mag * ratio / (1.0 - ratio);
          return;
        }
      } else {
        below = 0;
      }

      if (inward) {
        hi = lo;
        lo *= 0.5;
      } else {
        lo = hi;
        hi *= 2.0;
      }
    }
    // Budget exhausted while still above the stop threshold: extrapolate the
    // geometric tail if the decay ratio is trustworthy, otherwise only widen
    // the error.
    if (seen && prev > 0.0) {
      if (ratio > 0.0 && ratio < opt.divergence_ratio) {
        double tail = prev * ratio / (1.0 - ratio);
        sum.add(tail);
        err += 0.5 * tail;
      } else {
        err += prev * 8.0;
      }
    }
  };

  run(true, opt.max_octaves_in, true);
  if (!std::isfinite(cap) || cap > scale) run(false, opt.max_octaves_out, !std::isfinite(cap));
}

double ipow(double t, int k) { return k == 0 ? 1.0 : (k == 1 ? t : t * t); }

// Derivative of order k of u along the ray, in the distance coordinate.
// Central differences with step t/8 keep the stencil inside the region; the
// field's own gradient is preferred when present.
double ray_derivative(const ScalarField& u, const Ray& r, double t, int k) {
  auto at = [&](double s) { return u.value(Vec(r.edge + r.dir * s)); };
  if (k == 0) return at(t);
  double h = std::min(t / 8.0, 0.1);
  if (k == 1) {
    if (u.has_gradient()) return r.dir * u.gradient(Vec(r.edge + r.dir * t))[0];
    return (at(t + h) - at(t - h)) / (2.0 * h);
  }
  if (u.has_gradient()) {
    auto g = [&](double s) { return r.dir * u.gradient(Vec(r.edge + r.dir * s))[0]; };
    return (g(t + h) - g(t - h)) / (2.0 * h);
  }
  return (at(t + h) - 2.0 * at(t) + at(t - h)) / (h * h);
}

void check_common(const ScalarField& u, const Domain& region, const WeightSpec& spec) {
  if (u.dim != region.dim())
    throw InputError("weighted norm: field dimension does not match the region");
  if (!(spec.p > 1.0)) throw InputError("weighted norm: p must exceed 1");
  if (spec.n < 0) throw InputError("weighted norm: derivative order must be nonnegative");
  if (region.dim() == 2 && region.kind() == DomainKind::HalfSpace)
    throw InputError(
        "weighted norm: dimension-2 norms cover the ball and its complement; "
        "half-space norms are one-dimensional");
  if (region.dim() > 2) throw InputError("weighted norm: dimensions 1 and 2 are supported");
}

constexpr const char* kBoundaryDivergence =
    "weighted norm: shell contributions do not decay toward the boundary; the integral "
    "diverges (the boundary weight is too weak for this field)";
constexpr const char* kFarFieldDivergence =
    "weighted norm: shell contributions do not decay in the far field; the integral "
    "diverges (the growth weight is too weak for this field)";

// Integral (not yet the 1/p power) of |d_x^k D^k u|^p against the weighted
// measure, in dimension 1.
QuadResult order_integral_1d(const ScalarField& u, const Domain& region, const WeightSpec& spec,
                             int k, const NormOptions& opt) {
  CompensatedSum sum;
  double err = 0.0;
  for (const Ray& ray : region_rays_1d(region)) {
    double cap = std::min(ray.cap, ray_support_cap(u, ray));
    if (cap == 0.0) continue;
    std::vector<double> cuts = ray_kink_cuts(u, ray);
    auto G = [&](double t) {
      double v = ipow(t, k) * ray_derivative(u, ray, t, k);
      double w = std::pow(t, spec.theta - 1.0) * std::pow(1.0 + t, spec.sigma);
      return std::pow(std::fabs(v), spec.p) * w;
    };
    double scale = std::isfinite(ray.cap) ? 0.5 * ray.cap : 1.0;
    octave_sweep(G, scale, cap, cuts, opt, sum, err, kBoundaryDivergence, kFarFieldDivergence);
  }
  return {sum.total(), err};
}

// Adaptive periodic trapezoid rule over the angle; doubles until two
// successive levels agree. Smooth integrands converge spectrally.
double angular_integral(const std::function<double(double)>& F, int start_points, double& err) {
  const double two_pi = 6.283185307179586476925287;
  int m = std::max(8, start_points);
  auto level = [&](int pts) {
    double s = 0.0;
    for (int j = 0; j < pts; ++j) s += F(two_pi * j / pts);
    return s * two_pi / pts;
  };
  double prev = level(m);
  for (m *= 2; m <= 8192; m *= 2) {
    double cur = level(m);
    double gap = std::fabs(cur - prev);
    if (gap <= 1e-11 * std::max(std::fabs(cur), 1e-300)) {
      err += gap;
      return cur;
    }
    prev = cur;
  }
  err += std::fabs(prev) * 1e-8;
  return prev;
}

// Dimension-2 analogue for the ball and its complement: a radial sweep in the
// boundary distance with the angular integral folded into the integrand.
// `component` picks the gradient component for k = 1 (0 or 1), ignored at
// k = 0.
QuadResult order_integral_2d(const ScalarField& u, const Domain& region, const WeightSpec& spec,
                             int k, int component, const NormOptions& opt) {
  const double R = region.radius();
  const Vec c = region.center();
  const bool inside = region.kind() == DomainKind::Ball;
  CompensatedSum sum;
  double err = 0.0;
  double angular_err = 0.0;

  auto point = [&](double t, double phi) {
    double rho = inside ? R - t : R + t;
    return Vec(c[0] + rho * std::cos(phi), c[1] + rho * std::sin(phi));
  };
  auto deriv = [&](double t, double phi) {
    Vec x = point(t, phi);
    if (k == 0) return u.value(x);
    if (u.has_gradient()) return u.gradient(x)[component];
    double h = std::min(t / 8.0, 0.1);
    Vec xp = x, xm = x;
    xp[component] += h;
    xm[component] -= h;
    return (u.value(xp) - u.value(xm)) / (2.0 * h);
  };
  auto G = [&](double t) {
    double rho = inside ? R - t : R + t;
    if (rho <= 0.0) return 0.0;
    auto F = [&](double phi) {
      double v = ipow(t, k) * deriv(t, phi);
      return std::pow(std::fabs(v), spec.p);
    };
    double a = angular_integral(F, opt.angular_points, angular_err);
    return a * rho * std::pow(t, spec.theta - 2.0) * std::pow(1.0 + t, spec.sigma);
  };

  double cap = inside ? R : kInf;
  if (u.decay == Decay::CompactSupport && !inside) {
    double reach = (u.support_center - c).norm() + u.support_radius - R;
    if (reach <= 0.0) return {0.0, 0.0};
    cap = reach;
  }
  double scale = inside ? 0.5 * R : 1.0;
  octave_sweep(G, scale, cap, {}, opt, sum, err, kBoundaryDivergence, kFarFieldDivergence);
  return {sum.total(), err + angular_err};
}

NormTerm finish_term(int order, const QuadResult& q, double p) {
  NormTerm t;
  t.order = order;
  double integral = std::max(q.value, 0.0);
  t.value = std::pow(integral, 1.0 / p);
  if (integral > 0.0)
    t.error = q.error * t.value / (p * integral);
  else
    t.error = std::pow(q.error, 1.0 / p);
  return t;
}

}  // namespace

void to_json(nlohmann::json& j, const NormResult& r) {
  j = nlohmann::json{{"value", r.value}, {"error", r.error}};
  j["terms"] = nlohmann::json::array();
  for (const auto& t : r.terms)
    j["terms"].push_back({{"order", t.order}, {"value", t.value}, {"error", t.error}});
}

void to_json(nlohmann::json& j, const DyadicNormResult& r) {
  j = nlohmann::json{{"value", r.value}, {"error", r.error}};
  j["shells"] = nlohmann::json::array();
  for (const auto& s : r.shells)
    j["shells"].push_back({{"index", s.index}, {"contribution", s.contribution}});
}

void to_json(nlohmann::json& j, const HolderResult& r) {
  j = nlohmann::json{{"sup", r.sup_term},
                     {"seminorm", r.seminorm_term},
                     {"ladder_slope", r.ladder_slope},
                     {"ladder_ci", r.ladder_ci},
                     {"samples", r.samples}};
}

NormResult weighted_sobolev_norm(const ScalarField& u, const Domain& region,
                                 const WeightSpec& spec, const NormOptions& opt) {
  check_common(u, region, spec);
  if (region.dim() == 1 && spec.n > 2)
    throw InputError("weighted norm: derivative orders up to 2 in dimension 1");
  if (region.dim() == 2 && spec.n > 1)
    throw InputError("weighted norm: derivative orders up to 1 in dimension 2");

  NormResult out;
  for (int k = 0; k <= spec.n; ++k) {
    NormTerm term;
    if (region.dim() == 1) {
      term = finish_term(k, order_integral_1d(u, region, spec, k, opt), spec.p);
    } else if (k == 0) {
      term = finish_term(0, order_integral_2d(u, region, spec, 0, 0, opt), spec.p);
    } else {
      QuadResult q0 = order_integral_2d(u, region, spec, 1, 0, opt);
      QuadResult q1 = order_integral_2d(u, region, spec, 1, 1, opt);
      NormTerm a = finish_term(1, q0, spec.p);
      NormTerm b = finish_term(1, q1, spec.p);
      term.order = 1;
      term.value = a.value + b.value;
      term.error = a.error + b.error;
    }
    out.terms.push_back(term);
    out.value += term.value;
    out.error += term.error;
  }
  if (!std::isfinite(out.value))
    throw ToleranceError("weighted norm: quadrature produced a non-finite value");
  return out;
}

NormResult weighted_lp_norm(const ScalarField& u, const Domain& region, const WeightSpec& spec,
                            const NormOptions& opt) {
  WeightSpec base = spec;
  base.n = 0;
  return weighted_sobolev_norm(u, region, base, opt);
}

DyadicNormResult dyadic_norm(const ScalarField& u, const Domain& region, const WeightSpec& spec,
                             const PartitionFamily& partition, const NormOptions& opt) {
  check_common(u, region, spec);
  if (region.dim() != 1) throw InputError("dyadic norm: dimension 1 only");
  if (spec.n > 1) throw InputError("dyadic norm: smoothness 0 and 1 only");

  std::vector<Ray> rays = region_rays_1d(region);
  std::vector<std::vector<double>> cuts;
  std::vector<double> caps;
  for (const Ray& r : rays) {
    cuts.push_back(ray_kink_cuts(u, r));
    caps.push_back(std::min(r.cap, ray_support_cap(u, r)));
  }

  // The unweighted Sobolev integrals of zeta_{-m} u over the shell
  // {k1 e^m < d_x < k2 e^m}, one per derivative order.
  auto shell_integrals = [&](int m, std::array<double, 2>* errs) {
    std::array<double, 2> I{0.0, 0.0};
    *errs = {0.0, 0.0};
    double s_lo = partition.k1() * std::exp(m), s_hi = partition.k2() * std::exp(m);
    for (std::size_t ri = 0; ri < rays.size(); ++ri) {
      const Ray& ray = rays[ri];
      double a = s_lo, b = std::min(s_hi, caps[ri]);
      if (!(b > a)) continue;
      for (int k = 0; k <= spec.n; ++k) {
        auto f = [&](double t) {
          double z = partition.zeta_of_dist(-m, t);
          double v;
          if (k == 0) {
            v = z * u.value(Vec(ray.edge + ray.dir * t));
          } else {
            double zp = partition.zeta_dist_derivative(-m, t);
            v = zp * ray_derivative(u, ray, t, 0) + z * ray_derivative(u, ray, t, 1);
          }
          return std::pow(std::fabs(v), spec.p);
        };
        QuadResult q = log_panel(f, a, b, cuts[ri], opt.panel_tol);
        I[static_cast<std::size_t>(k)] += std::max(q.value, 0.0);
        (*errs)[static_cast<std::size_t>(k)] += q.error;
      }
    }
    return I;
  };

  auto contribution = [&](int m, double* quad_err) {
    double em = std::exp(m);
    std::array<double, 2> errs{};
    auto I = shell_integrals(m, &errs);
    double weight = std::pow(em, spec.theta) * std::pow(1.0 + em, spec.sigma);
    double total = 0.0;
    *quad_err = 0.0;
    for (int k = 0; k <= spec.n; ++k) {
      double factor = std::exp(m * (k * spec.p - 1.0));
      total += factor * I[static_cast<std::size_t>(k)];
      *quad_err += weight * factor * errs[static_cast<std::size_t>(k)];
    }
    return weight * total;
  };

  // Topmost shell that can meet the region (and the field's support).
  double reach = 0.0;
  for (double c : caps) reach = std::max(reach, c);
  if (reach == 0.0) return DyadicNormResult{};  // support misses the region
  bool finite_top = std::isfinite(reach);
  int n_top = finite_top ? static_cast<int>(std::ceil(std::log(reach / partition.k1()))) : 0;

  DyadicNormResult out;
  CompensatedSum sum;
  double err = 0.0;

  auto scan = [&](int start, int step, int budget, bool detect, const char* msg) {
    double prev = -1.0, ratio = -1.0;
    int flat = 0, below = 0, used = 0;
    bool seen = false;
    for (int m = start, k = 0; k < budget; ++k, m += step) {
      double qe = 0.0;
      double contrib = contribution(m, &qe);
      sum.add(contrib);
      err += qe;
      if (contrib != 0.0) out.shells.push_back({m, contrib});
      ++used;

      double mag = std::fabs(contrib);
      double base = std::max(std::fabs(sum.total()), 1e-300);
      if (mag > 0.0) seen = true;
      if (prev > 0.0 && mag > 0.0) {
        ratio = mag / prev;
        if (detect && ratio >= opt.divergence_ratio && mag > 1e-13 * base) {
          if (++flat >= 4 && used >= 6) throw DivergenceError(msg);
        } else {
          flat = 0;
        }
      } else {
        flat = 0;
        ratio = -1.0;
      }
      prev = mag;
      if (seen && mag <= 1e-12 * base) {
        if (++below >= 3) return;
      } else {
        below = 0;
      }
    }
    if (seen && prev > 0.0 && ratio > 0.0 && ratio < 1.0)
      err += prev * ratio / (1.0 - ratio);  // truncation goes to the error only
  };

  scan(n_top, -1, opt.max_octaves_in + opt.max_octaves_out, true, kBoundaryDivergence);
  if (!finite_top) scan(n_top + 1, +1, opt.max_octaves_out, true, kFarFieldDivergence);

  std::sort(out.shells.begin(), out.shells.end(),
            [](const DyadicShell& a, const DyadicShell& b) { return a.index < b.index; });
  double total = std::max(sum.total(), 0.0);
  out.value = std::pow(total, 1.0 / spec.p);
  out.error = total > 0.0 ? err * out.value / (spec.p * total) : std::pow(err, 1.0 / spec.p);
  if (!std::isfinite(out.value))
    throw ToleranceError("dyadic norm: quadrature produced a non-finite value");
  return out;
}

DyadicNormResult point_mass_dyadic_norm(const Vec& location, double weight, const Domain& region,
                                        const WeightSpec& spec,
                                        const PartitionFamily& partition) {
  if (region.dim() != 1) throw InputError("point-mass dyadic norm: dimension 1 only");
  if (location.dim != 1)
    throw InputError("point-mass dyadic norm: location dimension does not match the region");
  if (!(spec.p > 1.0)) throw InputError("point-mass dyadic norm: p must exceed 1");
  if (region.classify(location) != Region::Interior)
    throw DomainError("point-mass dyadic norm: the atom must lie inside the region");

  double dist = region.boundary_distance(location);
  auto [z_lo, z_hi] = partition.support_range(dist);

  DyadicNormResult out;
  CompensatedSum sum;
  double wp = std::pow(std::fabs(weight), spec.p);
  for (int m = -z_hi; m <= -z_lo; ++m) {
    double z = partition.zeta_of_dist(-m, dist);
    if (z <= 0.0) continue;
    double em = std::exp(m);
    double contrib = wp * std::pow(em, spec.theta) * std::pow(1.0 + em, spec.sigma) *
                     std::pow(z, spec.p) * std::exp(-m * spec.p);
    sum.add(contrib);
    out.shells.push_back({m, contrib});
  }
  out.value = std::pow(sum.total(), 1.0 / spec.p);
  out.error = 0.0;
  return out;
}

HolderResult weighted_holder(const ScalarField& u, const Domain& region, const HolderSpec& hs,
                             const RegularizedDistance& rd, int extra_samples,
                             std::uint64_t seed) {
  if (region.dim() != 1 || u.dim != 1)
    throw InputError("weighted Hoelder quantities: dimension 1 only");
  if (hs.k < 0 || hs.k > 1)
    throw InputError("weighted Hoelder quantities: derivative orders 0 and 1 only");
  if (!(hs.delta > 0.0 && hs.delta < 1.0))
    throw InputError("weighted Hoelder quantities: the quotient exponent must lie in (0, 1)");

  std::vector<Ray> rays = region_rays_1d(region);
  RngStream rng(seed, 2026);

  struct Sample {
    double x = 0.0;     // coordinate
    double t = 0.0;     // boundary distance
    double dku = 0.0;   // D^k u
    bool ladder = false;
  };
  std::vector<Sample> samples;

  auto push = [&](const Ray& ray, double t, bool ladder) {
    if (!(t > 0.0) || t >= ray.cap) return;
    Sample s;
    s.x = ray.edge + ray.dir * t;
    s.t = t;
    s.dku = ray_derivative(u, ray, t, hs.k);
    s.ladder = ladder;
    samples.push_back(s);
  };

  for (const Ray& ray : rays) {
    for (double t : geometric_grid(1e-6, 1e-1, 26)) push(ray, t, true);
    if (std::isfinite(ray.cap)) {
      for (double f : {0.5, 0.75, 0.9}) push(ray, f * ray.cap, false);
    } else {
      for (double t : {0.3, 1.0, 3.0, 10.0}) push(ray, t, false);
    }
  }
  for (int i = 0; i < extra_samples; ++i) {
    const Ray& ray = rays[static_cast<std::size_t>(i) % rays.size()];
    double hi = std::isfinite(ray.cap) ? 0.95 * ray.cap : 10.0;
    double t = std::exp(rng.uniform(std::log(1e-6), std::log(hi)));
    push(ray, t, false);
  }

  HolderResult out;
  out.samples = samples.size();

  std::vector<double> lx, ly;
  std::vector<double> w2(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Sample& s = samples[i];
    double psi = rd.psi_of_dist(s.t);
    double w1 = std::pow(psi, hs.k + hs.exponent) * std::fabs(s.dku);
    w2[i] = std::pow(psi, hs.k + hs.delta + hs.exponent) * s.dku;
    out.sup_term = std::max(out.sup_term, w1);
    if (s.ladder && w1 > 0.0) {
      lx.push_back(std::log(s.t));
      ly.push_back(std::log(w1));
    }
  }

  auto quotient = [&](std::size_t i, std::size_t j) {
    double gap = std::fabs(samples[i].x - samples[j].x);
    if (gap <= 0.0) return 0.0;
    return std::fabs(w2[i] - w2[j]) / std::pow(gap, hs.delta);
  };
  for (std::size_t i = 0; i + 1 < samples.size(); ++i)
    out.seminorm_term = std::max(out.seminorm_term, quotient(i, i + 1));
  std::size_t pair_budget = std::min<std::size_t>(300, samples.size() * samples.size());
  for (std::size_t k = 0; k < pair_budget && samples.size() > 1; ++k) {
    auto i = static_cast<std::size_t>(rng.uniform(0.0, 1.0) * samples.size());
    auto j = static_cast<std::size_t>(rng.uniform(0.0, 1.0) * samples.size());
    i = std::min(i, samples.size() - 1);
    j = std::min(j, samples.size() - 1);
    if (i != j) out.seminorm_term = std::max(out.seminorm_term, quotient(i, j));
  }

  if (lx.size() >= 5) {
    LineFit fit = fit_line(lx, ly);
    out.ladder_slope = fit.slope;
    out.ladder_ci = fit.slope_ci;
  } else {
    out.ladder_slope = 0.0;
    out.ladder_ci = kInf;
  }
  return out;
}

}  // namespace fracdir
