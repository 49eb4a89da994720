#include "fracdir/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "fracdir/error.hpp"
#include "fracdir/quad.hpp"
#include "fracdir/stats.hpp"

namespace fracdir {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Accum {
  double value = 0.0;
  double error = 0.0;
};

// integral over (0, h0] of a function that follows a power law A h^p near
// zero, reconstructed from its values at h0 and 2 h0. Handles every branch
// the exit kernels produce: a genuine power (p in (-1, 1)), a logarithmic
// singularity (the fitted p absorbs it to first order), and a finite limit.
Accum power_strip(const std::function<double(double)>& fn, double h0, double scale) {
  double g0 = fn(h0);
  double g1 = fn(2.0 * h0);
  if (!(g0 > 0.0) || !(g1 > 0.0)) return {0.0, 0.0};
  double p = std::log2(g1 / g0);
  if (p < -0.9) {
    // steeper than any integrable branch of these kernels; distrust the model
    double mass = g0 * h0 / 0.1;
    return {mass, mass};
  }
  double mass = g0 * h0 / (p + 1.0);
  double rel = (p < -0.05)
                   ? 8.0 * (h0 / scale) * (1.0 + std::fabs(std::log(h0 / scale)))
                   : 2e-3;
  return {mass, std::fabs(mass) * rel};
}

// Dyadic sweep of integral_{lo}^{hi} fn(s) ds in log coordinates, panels
// snapped at the given break points. Panel count shares one octave budget.
Accum log_panels(const std::function<double(double)>& fn, double lo, double hi,
                 const std::vector<double>& cuts, double panel_floor, int& budget,
                 const char* who) {
  Accum acc;
  double s = lo;
  while (s < hi) {
    double nxt = std::min(2.0 * s, hi);
    for (double c : cuts)
      if (c > s && c < nxt) {
        nxt = c;
        break;
      }
    QuadResult q = gk_integrate_abs(
        [&](double t) {
          double ss = std::exp(t);
          return fn(ss) * ss;
        },
        std::log(s), std::log(nxt), 1e-11, panel_floor, 12);
    acc.value += q.value;
    acc.error += q.error;
    s = nxt;
    if (--budget < 0) throw ToleranceError(std::string(who) + ": panel budget exhausted");
  }
  return acc;
}

std::vector<double> kink_offsets(const ScalarField& f, double origin, double dir, double lo,
                                 double hi) {
  std::vector<double> cuts;
  for (const auto& k : f.kinks) {
    for (double p : {k.center[0] - k.radius, k.center[0] + k.radius}) {
      double s = dir * (p - origin);
      if (s > lo && s < hi) cuts.push_back(s);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  return cuts;
}

// |g| on the ray beyond arc length s, for the sweep stopping rule.
double ray_bound(const ScalarField& g, double edge, double s) {
  if (g.decay == Decay::PowerLaw) {
    double r = s - std::fabs(edge);
    if (r >= g.far_radius && r > 0.0) return g.bound * std::pow(r, -g.decay_exponent);
  }
  return g.bound;
}

// One boundary ray of the exterior integral: z(s) = edge + dir * s, s > 0.
Accum kernel_ray(const Domain& dom, const StableParams& sp, const ScalarField& g, double x1,
                 double edge, double dir, const QuadratureOptions& opt) {
  const double a2 = 0.5 * sp.alpha;
  const bool ball = dom.kind() == DomainKind::Ball;
  auto zat = [&](double s) { return Vec(edge + dir * s); };
  auto K = [&](double s) { return poisson_kernel(dom, sp, Vec(x1), zat(s)); };

  const double scale = ball ? dom.radius() : dom.boundary_distance(Vec(x1));
  const double s0 = opt.boundary_cut * scale;

  Accum acc;

  // strip below the cut: the kernel runs like A s^{-alpha/2} against the
  // boundary, so the strip mass has a closed form once A is read off
  double g0 = g(zat(s0));
  if (g0 != 0.0) {
    double A0 = K(s0) * std::pow(s0, a2);
    double A1 = K(2.0 * s0) * std::pow(2.0 * s0, a2);
    double mass = std::pow(s0, 1.0 - a2) / (1.0 - a2);
    acc.value += g0 * A0 * mass;
    acc.error += std::fabs(g0) * std::fabs(A1 - A0) * mass;
  }

  double s_begin = s0;
  double s_end = kInf;
  if (g.decay == Decay::CompactSupport) {
    double m = dir * (g.support_center[0] - edge);
    double hi = m + g.support_radius;
    if (hi <= s0) return acc;  // nothing beyond the strip on this ray
    s_begin = std::max(s0, m - g.support_radius);
    s_end = hi;
  }

  std::vector<double> cuts = kink_offsets(g, edge, dir, s_begin, s_end);

  const double tol_side = 0.25 * opt.tol;
  const double panel_floor = 1e-3 * opt.tol / static_cast<double>(opt.max_octaves);
  const double C = poisson_kernel_constant(sp);
  const double dx = dom.boundary_distance(Vec(x1));
  double num = 0.0;
  if (ball) {
    double rx = std::fabs(x1 - dom.center()[0]);
    num = std::pow(dom.radius() * dom.radius() - rx * rx, a2);
  }

  double s = s_begin;
  int octaves = 0;
  while (s < s_end) {
    double nxt = std::min(2.0 * s, s_end);
    for (double c : cuts)
      if (c > s && c < nxt) {
        nxt = c;
        break;
      }
    QuadResult q = gk_integrate_abs(
        [&](double t) {
          double ss = std::exp(t);
          return K(ss) * g(zat(ss)) * ss;
        },
        std::log(s), std::log(nxt), 1e-11, panel_floor, 12);
    acc.value += q.value;
    acc.error += q.error;
    s = nxt;
    if (++octaves > opt.max_octaves)
      throw ToleranceError(
          "solve_elliptic_kernel: dyadic sweep exhausted its octave budget before the tail "
          "fell under tolerance");
    if (s >= s_end) break;
    // the kernel beyond s is at most C num s^{-alpha-1} (ball) or
    // C d_x^{a/2} s^{-a/2-1} (half-space), both integrated in closed form
    double tail = ball ? C * num * std::pow(s, -sp.alpha) / sp.alpha
                       : C * std::pow(dx, a2) * std::pow(s, -a2) / a2;
    tail *= ray_bound(g, edge, s);
    if (tail < tol_side) {
      acc.error += tail;
      break;
    }
  }
  return acc;
}

Accum kernel_route(const Domain& dom, const StableParams& sp, const ExteriorData& g,
                   const Vec& x, const QuadratureOptions& opt) {
  if (dom.kind() == DomainKind::BallComplement)
    throw InputError("solve_elliptic_kernel: the kernel route covers the ball and the half-space");
  if (x.dim != dom.dim() || sp.d != dom.dim())
    throw InputError("solve_elliptic_kernel: dimension mismatch");
  if (dom.classify(x) != Region::Interior)
    throw DomainError("solve_elliptic_kernel: the evaluation point must lie inside the domain");
  if (g.kind == ExteriorKind::TimeDependent)
    throw InputError("solve_elliptic_kernel: time-dependent data belongs to the parabolic route");

  if (g.kind == ExteriorKind::PointMass) {
    if (dom.classify(g.atom_location) != Region::Exterior)
      throw DomainError(
          "solve_elliptic_kernel: the point mass must sit strictly outside the closed domain");
    return {g.atom_weight * poisson_kernel(dom, sp, x, g.atom_location), 0.0};
  }

  if (sp.d != 1)
    throw InputError(
        "solve_elliptic_kernel: closed-form data is integrated in one dimension only");
  const ScalarField& gf = g.field;
  if (!gf.value) throw InputError("solve_elliptic_kernel: exterior field has no evaluator");
  if (gf.dim != 1) throw InputError("solve_elliptic_kernel: exterior field dimension mismatch");

  Accum acc;
  if (dom.kind() == DomainKind::Ball) {
    double c0 = dom.center()[0], R = dom.radius();
    Accum left = kernel_ray(dom, sp, gf, x[0], c0 - R, -1.0, opt);
    Accum right = kernel_ray(dom, sp, gf, x[0], c0 + R, +1.0, opt);
    acc = {left.value + right.value, left.error + right.error};
  } else {
    // half-space {orientation * z > 0}: the complement is one ray from 0
    acc = kernel_ray(dom, sp, gf, x[0], 0.0, -static_cast<double>(dom.orientation()), opt);
  }
  return acc;
}

Accum green_route(const Domain& ball, const StableParams& sp, const ScalarField& f, const Vec& x,
                  const QuadratureOptions& opt) {
  if (ball.kind() != DomainKind::Ball)
    throw InputError("green_potential_ball: domain must be a ball");
  if (sp.d != 1 || ball.dim() != 1)
    throw InputError("green_potential_ball: implemented in one dimension only");
  if (x.dim != 1 || f.dim != 1) throw InputError("green_potential_ball: dimension mismatch");
  if (!f.value) throw InputError("green_potential_ball: forcing has no evaluator");
  if (ball.classify(x) != Region::Interior) return {0.0, 0.0};

  const double R = ball.radius();
  const double c0 = ball.center()[0];
  const double x1 = x[0];
  const double h0 = opt.singularity_cut * R;
  const double panel_floor = 1e-3 * opt.tol / static_cast<double>(opt.max_octaves);
  auto G = [&](double y) { return green_function_ball(ball, sp, x, Vec(y)); };
  // near the field point the kernel must see the separation exactly, not the
  // cancellation-ridden difference of two close coordinates
  auto Gray = [&](double dir, double h) {
    return green_function_ball_ray(ball, sp, x, Vec(dir), h);
  };

  Accum acc;
  int budget = 2 * opt.max_octaves;
  for (int dir : {-1, +1}) {
    const double E = c0 + dir * R;
    const double L = dir > 0 ? E - x1 : x1 - E;
    if (L <= 4.0 * h0) {
      // the field point hugs the boundary closer than the cut; the green
      // function there is below G(mid) on the whole side
      acc.error += f.bound * (G(x1 + dir * 0.5 * L) + 1.0) * L;
      continue;
    }

    // strip around the field point, where the integrand is singular
    {
      Accum s = power_strip([&](double h) { return Gray(dir, h); }, h0, R);
      double fx = f(Vec(x1));
      acc.value += fx * s.value;
      acc.error += std::fabs(fx) * s.error;
    }
    // strip against the boundary, where the green function vanishes
    {
      Accum s = power_strip([&](double e) { return G(E - dir * e); }, h0, R);
      double fe = f(Vec(E - dir * h0));
      acc.value += fe * s.value;
      acc.error += std::fabs(fe) * s.error;
    }

    // the two halves of the side, each swept away from its singular end
    double mid = 0.5 * L;
    Accum inner = log_panels([&](double h) { return Gray(dir, h) * f(Vec(x1 + dir * h)); }, h0,
                             mid, kink_offsets(f, x1, dir, h0, mid), panel_floor, budget,
                             "green_potential_ball");
    Accum outer = log_panels([&](double e) { return G(E - dir * e) * f(Vec(E - dir * e)); }, h0,
                             mid, kink_offsets(f, E, -dir, h0, mid), panel_floor, budget,
                             "green_potential_ball");
    acc.value += inner.value + outer.value;
    acc.error += inner.error + outer.error;
  }
  return acc;
}

struct PathOut {
  double value = 0.0;
  std::uint8_t counted = 0;
};

McValue reduce(const std::vector<PathOut>& outs) {
  MeanAccumulator acc;
  std::size_t censored = 0;
  for (const auto& o : outs) {
    if (o.counted)
      acc.add(o.value);
    else
      ++censored;
  }
  McValue v;
  v.value = acc.mean();
  v.std_error = acc.stderror();
  v.paths = acc.count();
  v.censored = censored;
  return v;
}

void check_mc_point(const Domain& dom, const StableParams& sp, const Vec& x, const char* who) {
  if (dom.kind() == DomainKind::BallComplement)
    throw InputError(std::string(who) + ": paths on the complement of a ball may never return; "
                                        "use the ball or the half-space");
  if (x.dim != dom.dim() || sp.d != dom.dim())
    throw InputError(std::string(who) + ": dimension mismatch");
  if (dom.classify(x) != Region::Interior)
    throw DomainError(std::string(who) + ": the evaluation point must lie inside the domain");
}

}  // namespace

double solve_elliptic_kernel(const Domain& domain, const StableParams& sp, const ExteriorData& g,
                             const Vec& x, const QuadratureOptions& opt) {
  return kernel_route(domain, sp, g, x, opt).value;
}

double green_potential_ball(const Domain& ball, const StableParams& sp, const ScalarField& f,
                            const Vec& x, const QuadratureOptions& opt) {
  return green_route(ball, sp, f, x, opt).value;
}

McValue solve_elliptic_mc(const Domain& domain, const StableParams& sp, const ExteriorData& g,
                          const Vec& x, const McConfig& mc) {
  check_mc_point(domain, sp, x, "solve_elliptic_mc");
  if (g.kind == ExteriorKind::PointMass)
    throw InputError(
        "solve_elliptic_mc: a path never hits a point mass; use the kernel route for atoms");
  if (g.kind == ExteriorKind::TimeDependent)
    throw InputError("solve_elliptic_mc: time-dependent data belongs to the parabolic route");
  if (!g.field.value) throw InputError("solve_elliptic_mc: exterior field has no evaluator");
  if (g.field.dim != domain.dim())
    throw InputError("solve_elliptic_mc: exterior field dimension mismatch");
  if (mc.paths == 0) throw InputError("solve_elliptic_mc: needs at least one path");

  auto outs = run_paths<PathOut>(
      mc.paths, mc.seed, mc.threads,
      [&](std::size_t, RngStream& rng) -> PathOut {
        ExitRecord r = walk_on_spheres(domain, sp, x, rng, mc.max_steps);
        if (r.status != ExitStatus::Exited) return {0.0, 0};
        return {g.field(r.position), 1};
      });
  return reduce(outs);
}

McValue solve_elliptic_mc(const Domain& domain, const StableParams& sp, const ExteriorData& g,
                          const ScalarField& f, const Vec& x, const McConfig& mc) {
  McValue gpart = solve_elliptic_mc(domain, sp, g, x, mc);
  if (!f.value) throw InputError("solve_elliptic_mc: forcing has no evaluator");
  if (f.dim != domain.dim()) throw InputError("solve_elliptic_mc: forcing dimension mismatch");

  // running integral of f along killed paths, on its own stream family
  auto outs = run_paths<PathOut>(
      mc.paths, mc.seed ^ 0x9e3779b97f4a7c15ULL, mc.threads,
      [&](std::size_t, RngStream& rng) -> PathOut {
        Vec pos = x;
        double integral = 0.0;
        for (int k = 0; k < mc.max_steps; ++k) {
          integral += f(pos) * mc.dt;
          pos = pos + sample_increment(sp, mc.dt, rng);
          if (domain.classify(pos) != Region::Interior) return {integral, 1};
        }
        return {0.0, 0};
      });
  McValue fpart = reduce(outs);

  McValue v;
  v.value = gpart.value - fpart.value;
  v.std_error = std::hypot(gpart.std_error, fpart.std_error);
  v.paths = gpart.paths + fpart.paths;
  v.censored = gpart.censored + fpart.censored;
  return v;
}

McValue solve_parabolic_mc(const Domain& domain, const StableParams& sp, const ExteriorData& g,
                           double t, const Vec& x, const McConfig& mc) {
  check_mc_point(domain, sp, x, "solve_parabolic_mc");
  if (g.kind == ExteriorKind::PointMass)
    throw InputError("solve_parabolic_mc: a path never hits a point mass");
  if (!(t >= 0.0)) throw InputError("solve_parabolic_mc: the horizon must be nonnegative");
  if (!(mc.dt > 0.0)) throw InputError("solve_parabolic_mc: the step dt must be positive");

  std::function<double(double, const Vec&)> gt;
  if (g.kind == ExteriorKind::TimeDependent) {
    if (!g.time_value) throw InputError("solve_parabolic_mc: datum has no evaluator");
    gt = g.time_value;
  } else {
    if (!g.field.value) throw InputError("solve_parabolic_mc: datum has no evaluator");
    if (g.field.dim != domain.dim())
      throw InputError("solve_parabolic_mc: exterior field dimension mismatch");
    const ScalarField& gf = g.field;
    gt = [gf](double, const Vec& z) { return gf(z); };
  }
  if (t == 0.0) return {0.0, 0.0, 0, 0};  // nothing has exited yet
  if (mc.paths == 0) throw InputError("solve_parabolic_mc: needs at least one path");

  auto outs = run_paths<PathOut>(
      mc.paths, mc.seed, mc.threads,
      [&](std::size_t, RngStream& rng) -> PathOut {
        ExitRecord r = killed_path(domain, sp, x, mc.dt, t, rng, mc.max_steps);
        if (r.status == ExitStatus::Censored) return {0.0, 0};
        if (r.status == ExitStatus::Survived) return {0.0, 1};
        return {gt(t - r.time, r.position), 1};
      });
  return reduce(outs);
}

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::KernelQuadrature:
      return "kernel-quadrature";
    case Provenance::WalkOnSpheres:
      return "walk-on-spheres";
    case Provenance::KilledPath:
      return "killed-path";
  }
  return "unknown";
}

SolutionField SolutionField::elliptic_quadrature(const Domain& domain, const StableParams& sp,
                                                 const ExteriorData& g,
                                                 const QuadratureOptions& opt) {
  SolutionField s;
  s.domain_ = domain;
  s.params_ = sp;
  s.exterior_ = g;
  s.provenance_ = Provenance::KernelQuadrature;
  s.quad_ = opt;
  return s;
}

SolutionField SolutionField::elliptic_quadrature(const Domain& domain, const StableParams& sp,
                                                 const ExteriorData& g, const ScalarField& f,
                                                 const QuadratureOptions& opt) {
  if (domain.kind() != DomainKind::Ball)
    throw InputError("SolutionField: the quadrature route takes a forcing term on the ball only");
  SolutionField s = elliptic_quadrature(domain, sp, g, opt);
  s.forcing_ = f;
  return s;
}

SolutionField SolutionField::elliptic_monte_carlo(const Domain& domain, const StableParams& sp,
                                                  const ExteriorData& g, const McConfig& mc) {
  SolutionField s;
  s.domain_ = domain;
  s.params_ = sp;
  s.exterior_ = g;
  s.provenance_ = Provenance::WalkOnSpheres;
  s.mc_ = mc;
  return s;
}

SolutionField SolutionField::elliptic_monte_carlo(const Domain& domain, const StableParams& sp,
                                                  const ExteriorData& g, const ScalarField& f,
                                                  const McConfig& mc) {
  SolutionField s = elliptic_monte_carlo(domain, sp, g, mc);
  s.forcing_ = f;
  return s;
}

SolutionField SolutionField::parabolic_monte_carlo(const Domain& domain, const StableParams& sp,
                                                   const ExteriorData& g, double t,
                                                   const McConfig& mc) {
  if (!(t >= 0.0)) throw InputError("SolutionField: the horizon must be nonnegative");
  SolutionField s;
  s.domain_ = domain;
  s.params_ = sp;
  s.exterior_ = g;
  s.parabolic_ = true;
  s.time_ = t;
  s.provenance_ = Provenance::KilledPath;
  s.mc_ = mc;
  return s;
}

SolutionValue SolutionField::operator()(const Vec& x) const {
  if (x.dim != domain_.dim()) throw InputError("SolutionField: dimension mismatch");
  Region reg = domain_.classify(x);
  if (reg == Region::Boundary)
    throw DomainError("SolutionField: evaluate strictly inside or outside, not on the boundary");

  if (reg == Region::Exterior) {
    // the solution agrees with the datum off the domain, exactly
    double gv = 0.0;
    switch (exterior_.kind) {
      case ExteriorKind::ClosedForm:
        gv = exterior_.field(x);
        break;
      case ExteriorKind::PointMass:
        gv = 0.0;  // the atom has no pointwise trace away from its location
        break;
      case ExteriorKind::TimeDependent:
        gv = exterior_.time_value(time_, x);
        break;
    }
    return {gv, 0.0, provenance_, true};
  }

  switch (provenance_) {
    case Provenance::KernelQuadrature: {
      Accum a = kernel_route(domain_, params_, exterior_, x, quad_);
      if (has_forcing()) {
        Accum gp = green_route(domain_, params_, forcing_, x, quad_);
        a.value -= gp.value;
        a.error += gp.error;
      }
      return {a.value, a.error, provenance_, true};
    }
    case Provenance::WalkOnSpheres: {
      McValue m = has_forcing() ? solve_elliptic_mc(domain_, params_, exterior_, forcing_, x, mc_)
                                : solve_elliptic_mc(domain_, params_, exterior_, x, mc_);
      return {m.value, m.std_error, provenance_, m.reliable()};
    }
    case Provenance::KilledPath: {
      McValue m = solve_parabolic_mc(domain_, params_, exterior_, time_, x, mc_);
      return {m.value, m.std_error, provenance_, m.reliable()};
    }
  }
  throw InputError("SolutionField: unknown evaluation route");
}

}  // namespace fracdir
