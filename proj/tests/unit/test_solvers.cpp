#include <cmath>
#include <string>

#include "doctest.h"

#include "fracdir/error.hpp"
#include "fracdir/fields.hpp"
#include "fracdir/fraclap.hpp"
#include "fracdir/geometry.hpp"
#include "fracdir/kernels.hpp"
#include "fracdir/quad.hpp"
#include "fracdir/solvers.hpp"

using namespace fracdir;

namespace {

const Domain kBall = Domain::ball(Vec(0.0), 1.0);
const Domain kHalf = Domain::half_space(1);

ScalarField constant_one() { return cosine_field(Vec(0.0), 1.0); }

ScalarField constant_zero() {
  ScalarField z;
  z.value = [](const Vec&) { return 0.0; };
  z.dim = 1;
  z.bound = 0.0;
  return z;
}

// magnitude of the constant the generator assigns to (1-|x|^2)_+^{alpha/2}
double barrier_constant(int d, double a) {
  return std::pow(2.0, a) * std::tgamma(1.0 + 0.5 * a) * std::tgamma(0.5 * (d + a)) /
         std::tgamma(0.5 * d);
}

}  // namespace

TEST_CASE("constant exterior data extends to the constant") {
  ExteriorData g = ExteriorData::closed_form(constant_one());
  for (double a : {0.6, 1.0, 1.5}) {
    StableParams sp(1, a);
    for (double x : {0.0, -0.5, 0.7, 0.93}) {
      CHECK(solve_elliptic_kernel(kBall, sp, g, Vec(x)) == doctest::Approx(1.0).epsilon(1e-7));
    }
    for (double x : {0.2, 1.0, 7.0}) {
      CHECK(solve_elliptic_kernel(kHalf, sp, g, Vec(x)) == doctest::Approx(1.0).epsilon(1e-7));
    }
  }
}

TEST_CASE("compactly supported data reproduces a direct kernel quadrature") {
  StableParams sp(1, 1.3);
  struct Case {
    Domain dom;
    double center;
    double x;
  };
  for (const Case& c : {Case{kBall, 2.5, 0.3}, Case{kHalf, -2.5, 0.8}}) {
    ScalarField b = bump_field(Vec(c.center), 0.5, 1.0);
    ExteriorData g = ExteriorData::closed_form(b);
    double v = solve_elliptic_kernel(c.dom, sp, g, Vec(c.x));
    QuadResult direct = gk_integrate(
        [&](double z) { return poisson_kernel(c.dom, sp, Vec(c.x), Vec(z)) * b(Vec(z)); },
        c.center - 0.5, c.center + 0.5, 1e-13, 15);
    CHECK(std::fabs(v - direct.value) <= 1e-12);
  }
}

TEST_CASE("a point mass contributes exactly its kernel value") {
  StableParams sp(1, 0.9);
  ExteriorData g = ExteriorData::point_mass(Vec(1.7), 2.5);
  double v = solve_elliptic_kernel(kBall, sp, g, Vec(0.3));
  CHECK(v == doctest::Approx(2.5 * poisson_kernel(kBall, sp, Vec(0.3), Vec(1.7))).epsilon(1e-14));
  double vh = solve_elliptic_kernel(kHalf, sp, ExteriorData::point_mass(Vec(-0.4), 0.7), Vec(1.1));
  CHECK(vh ==
        doctest::Approx(0.7 * poisson_kernel(kHalf, sp, Vec(1.1), Vec(-0.4))).epsilon(1e-14));
}

TEST_CASE("the potential of a constant forcing is the mean exit time") {
  ScalarField one = constant_one();
  for (double a : {0.6, 1.0, 1.5}) {
    StableParams sp(1, a);
    for (double x : {0.0, -0.4, 0.7, 0.95}) {
      double v = green_potential_ball(kBall, sp, one, Vec(x));
      double exact = std::pow(1.0 - x * x, 0.5 * a) / barrier_constant(1, a);
      CHECK(v == doctest::Approx(exact).epsilon(1e-9));
    }
  }
  // for order one the constant is exactly 1, so the exit time from the center is 1
  CHECK(green_potential_ball(kBall, StableParams(1, 1.0), one, Vec(0.0)) ==
        doctest::Approx(1.0).epsilon(1e-10));
  // off the domain the potential vanishes identically
  CHECK(green_potential_ball(kBall, StableParams(1, 1.0), one, Vec(2.0)) == 0.0);
}

TEST_CASE("odd forcing vanishes at the center and scaling is exact") {
  StableParams sp(1, 1.1);
  ScalarField odd;
  odd.value = [](const Vec& y) { return std::sin(3.0 * y[0]); };
  odd.dim = 1;
  CHECK(std::fabs(green_potential_ball(kBall, sp, odd, Vec(0.0))) <= 1e-14);

  ScalarField f = bump_field(Vec(0.1), 0.5, 1.0);
  double v1 = green_potential_ball(kBall, sp, f, Vec(0.3));
  double v2 = green_potential_ball(kBall, sp, scale_field(2.0, f), Vec(0.3));
  CHECK(v2 == doctest::Approx(2.0 * v1).epsilon(1e-12));
  CHECK(v1 > 0.0);
}

TEST_CASE("the kernel slice of a point mass maps to the negative power law") {
  // u = w K(., x0) inside the ball, 0 outside: applying the generator at an
  // interior point must reproduce -c_d w |x - x0|^{-1-alpha}
  for (double a : {0.7, 1.0, 1.4}) {
    StableParams sp(1, a);
    Vec x0(1.7);
    double w = 2.0;
    ScalarField slice;
    slice.value = [=](const Vec& y) {
      return kBall.classify(y) == Region::Interior ? w * poisson_kernel(kBall, sp, y, x0) : 0.0;
    };
    slice.dim = 1;
    slice.decay = Decay::CompactSupport;
    slice.support_center = Vec(0.0);
    slice.support_radius = 1.0;
    slice.bound = w * poisson_kernel(kBall, sp, Vec(0.0), x0) * 50.0;
    slice.kinks = {{Vec(0.0), 1.0}};
    PvOptions po;
    po.tail_tol = 1e-6;
    po.panel_tol = 1e-8;
    PvResult r = fraclap_pv(slice, sp, Vec(0.3), po);
    double predicted = -sp.c_d() * w * std::pow(std::fabs(0.3 - x0[0]), -1.0 - a);
    CHECK(r.value == doctest::Approx(predicted).epsilon(1e-7));
  }
}

TEST_CASE("quadrature and sampling routes agree on the same datum") {
  StableParams sp(1, 1.2);
  ExteriorData g = ExteriorData::closed_form(power_tail_field(1, 2.0, 1.0));
  McConfig mc;
  mc.paths = 20000;
  mc.seed = 7;
  McValue m = solve_elliptic_mc(kBall, sp, g, Vec(0.4), mc);
  double v = solve_elliptic_kernel(kBall, sp, g, Vec(0.4));
  CHECK(m.censored == 0);
  CHECK(m.reliable());
  CHECK(std::fabs(m.value - v) <= 4.0 * m.std_error);
}

TEST_CASE("forcing integral along killed paths matches the closed form") {
  // g = 0, f = 1: the solution is minus the mean exit time
  StableParams sp(1, 1.0);
  ExteriorData g = ExteriorData::closed_form(constant_zero());
  McConfig mc;
  mc.paths = 20000;
  mc.seed = 11;
  mc.dt = 1e-3;
  McValue m = solve_elliptic_mc(kBall, sp, g, constant_one(), Vec(0.0), mc);
  double exact = -1.0 / barrier_constant(1, 1.0);
  CHECK(m.reliable());
  // the time integral carries an O(dt) discretization bias on top of noise
  CHECK(std::fabs(m.value - exact) <= 4.0 * m.std_error + 0.02 * std::fabs(exact));
}

TEST_CASE("exit probabilities grow with the horizon and saturate") {
  StableParams sp(1, 1.2);
  ExteriorData g = ExteriorData::closed_form(constant_one());
  McConfig mc;
  mc.paths = 10000;
  mc.seed = 3;
  mc.dt = 1e-2;
  double prev = -1.0;
  for (double t : {0.2, 0.8, 3.0, 30.0}) {
    McValue m = solve_parabolic_mc(kBall, sp, g, t, Vec(0.0), mc);
    CHECK(m.value >= prev);
    CHECK(m.value <= 1.0 + 1e-12);
    CHECK(m.censored == 0);
    prev = m.value;
  }
  CHECK(prev >= 0.999);  // by t = 30 effectively every path has left
  CHECK(solve_parabolic_mc(kBall, sp, g, 0.0, Vec(0.0), mc).value == 0.0);
}

TEST_CASE("the time argument reaches the datum with the exit time removed") {
  // with one seed the three runs see identical paths, so the samples obey
  // (t - tau) + tau = t path by path
  StableParams sp(1, 1.3);
  McConfig mc;
  mc.paths = 4000;
  mc.seed = 17;
  mc.dt = 1e-2;
  double t = 1.5;
  ExteriorData ones = ExteriorData::time_dependent([](double, const Vec&) { return 1.0; });
  ExteriorData age = ExteriorData::time_dependent([](double s, const Vec&) { return s; });
  ExteriorData spent = ExteriorData::time_dependent([t](double s, const Vec&) { return t - s; });
  double p = solve_parabolic_mc(kBall, sp, ones, t, Vec(0.2), mc).value;
  double b = solve_parabolic_mc(kBall, sp, age, t, Vec(0.2), mc).value;
  double c = solve_parabolic_mc(kBall, sp, spent, t, Vec(0.2), mc).value;
  CHECK(b + c == doctest::Approx(t * p).epsilon(1e-12));
  // a closed-form datum is read as constant in time
  ExteriorData gc = ExteriorData::closed_form(constant_one());
  CHECK(solve_parabolic_mc(kBall, sp, gc, t, Vec(0.2), mc).value == doctest::Approx(p));
}

TEST_CASE("solutions decay toward the boundary at the kernel rate") {
  StableParams sp(1, 1.2);
  ExteriorData g = ExteriorData::closed_form(bump_field(Vec(2.5), 0.5, 1.0));
  double lo = solve_elliptic_kernel(kBall, sp, g, Vec(1.0 - 1e-4));
  double hi = solve_elliptic_kernel(kBall, sp, g, Vec(1.0 - 1e-1));
  double slope = std::log(hi / lo) / std::log(1e3);
  CHECK(slope == doctest::Approx(0.5 * sp.alpha).epsilon(0.05));
}

TEST_CASE("repeated runs with one seed are identical") {
  StableParams sp(1, 1.2);
  ExteriorData g = ExteriorData::closed_form(power_tail_field(1, 2.0, 1.0));
  McConfig mc;
  mc.paths = 5000;
  McValue m1 = solve_elliptic_mc(kBall, sp, g, Vec(0.4), mc);
  McValue m2 = solve_elliptic_mc(kBall, sp, g, Vec(0.4), mc);
  CHECK(m1.value == m2.value);
  CHECK(m1.std_error == m2.std_error);
  mc.seed = 99;
  CHECK(solve_elliptic_mc(kBall, sp, g, Vec(0.4), mc).value != m1.value);
}

TEST_CASE("superposition and order are preserved") {
  StableParams sp(1, 0.8);
  ScalarField b1 = bump_field(Vec(2.0), 0.4, 1.0);
  ScalarField b2 = bump_field(Vec(-3.0), 0.8, 0.5);
  Vec x(0.1);
  double u1 = solve_elliptic_kernel(kBall, sp, ExteriorData::closed_form(b1), x);
  double u2 = solve_elliptic_kernel(kBall, sp, ExteriorData::closed_form(b2), x);
  double u12 = solve_elliptic_kernel(kBall, sp, ExteriorData::closed_form(add_fields(b1, b2)), x);
  CHECK(u12 == doctest::Approx(u1 + u2).epsilon(1e-8));
  CHECK(u1 > 0.0);
  CHECK(u2 > 0.0);
  // enlarging the datum enlarges the solution
  CHECK(solve_elliptic_kernel(kBall, sp, ExteriorData::closed_form(scale_field(2.0, b1)), x) >
        u1);
}

TEST_CASE("harmonic extension pairs to zero against interior test functions") {
  StableParams sp(1, 1.2);
  ExteriorData g = ExteriorData::closed_form(bump_field(Vec(2.2), 0.6, 1.0));
  QuadratureOptions qo;
  qo.tol = 1e-8;
  ScalarField u;
  u.value = [&](const Vec& y) { return solve_elliptic_kernel(kBall, sp, g, y, qo); };
  u.dim = 1;
  u.bound = 1.0;
  PairingSpec spec;
  spec.domain = kBall;
  spec.interior = u;
  spec.exterior = g;
  spec.test_fn = bump_field(Vec(-0.2), 0.5, 1.0);
  PvOptions po;
  po.tail_tol = 1e-6;
  po.panel_tol = 1e-7;
  CHECK(std::fabs(distributional_pairing(spec, sp, po)) <= 1e-8);
}

TEST_CASE("solution fields dispatch on the query region") {
  StableParams sp(1, 1.1);
  ScalarField gb = bump_field(Vec(2.5), 0.5, 1.0);
  ExteriorData g = ExteriorData::closed_form(gb);

  SolutionField u = SolutionField::elliptic_quadrature(kBall, sp, g);
  SolutionValue inside = u(Vec(0.3));
  CHECK(inside.value == doctest::Approx(solve_elliptic_kernel(kBall, sp, g, Vec(0.3))));
  CHECK(inside.provenance == Provenance::KernelQuadrature);
  CHECK(inside.reliable);
  CHECK(inside.error <= 1e-8);
  SolutionValue outside = u(Vec(2.4));
  CHECK(outside.value == gb(Vec(2.4)));  // the trace is the datum itself
  CHECK(outside.error == 0.0);
  CHECK_THROWS_AS(u(Vec(1.0)), DomainError);

  // with a forcing term the field composes extension minus potential
  ScalarField f = bump_field(Vec(0.0), 0.6, 1.0);
  SolutionField uf = SolutionField::elliptic_quadrature(kBall, sp, g, f);
  CHECK(uf(Vec(0.3)).value == doctest::Approx(solve_elliptic_kernel(kBall, sp, g, Vec(0.3)) -
                                              green_potential_ball(kBall, sp, f, Vec(0.3))));
  CHECK(uf(Vec(2.4)).value == gb(Vec(2.4)));

  McConfig mc;
  mc.paths = 2000;
  SolutionField um = SolutionField::elliptic_monte_carlo(kBall, sp, g, mc);
  CHECK(um(Vec(0.3)).value == solve_elliptic_mc(kBall, sp, g, Vec(0.3), mc).value);
  CHECK(um(Vec(0.3)).provenance == Provenance::WalkOnSpheres);

  ExteriorData gt = ExteriorData::time_dependent([](double s, const Vec& z) { return s + z[0]; });
  SolutionField up = SolutionField::parabolic_monte_carlo(kBall, sp, gt, 2.0, mc);
  CHECK(up(Vec(3.0)).value == 2.0 + 3.0);  // exterior trace at the field's time
  CHECK(up(Vec(0.3)).provenance == Provenance::KilledPath);

  CHECK(std::string(provenance_name(Provenance::KernelQuadrature)) == "kernel-quadrature");
  CHECK(std::string(provenance_name(Provenance::WalkOnSpheres)) == "walk-on-spheres");
  CHECK(std::string(provenance_name(Provenance::KilledPath)) == "killed-path");
}

TEST_CASE("censored paths are excluded and flagged") {
  StableParams sp(1, 1.4);
  ExteriorData g = ExteriorData::closed_form(power_tail_field(1, 2.0, 1.0));
  McConfig mc;
  mc.paths = 500;
  mc.max_steps = 1;  // almost every walk needs more than one sphere here
  McValue m = solve_elliptic_mc(kHalf, sp, g, Vec(100.0), mc);
  CHECK(m.censored > 0);
  CHECK(m.paths + m.censored == 500);
  CHECK(!m.reliable());
  CHECK(std::isfinite(m.value));

  // killed paths hit the same budget wall
  McConfig mk;
  mk.paths = 50;
  mk.max_steps = 3;
  mk.dt = 1e-4;
  McValue p = solve_parabolic_mc(kBall, sp, ExteriorData::closed_form(constant_one()), 10.0,
                                 Vec(0.0), mk);
  CHECK(p.censored > 0);
  CHECK(!p.reliable());
}

TEST_CASE("data and domains outside the contract are refused") {
  StableParams sp(1, 1.0);
  ExteriorData g = ExteriorData::closed_form(constant_one());
  Domain comp = Domain::ball_complement(Vec(0.0), 1.0);
  McConfig mc;
  mc.paths = 10;

  CHECK_THROWS_AS(solve_elliptic_kernel(comp, sp, g, Vec(2.0)), InputError);
  CHECK_THROWS_AS(solve_elliptic_kernel(kBall, sp, g, Vec(1.5)), DomainError);
  CHECK_THROWS_AS(
      solve_elliptic_kernel(kBall, sp, ExteriorData::point_mass(Vec(0.5), 1.0), Vec(0.0)),
      DomainError);
  CHECK_THROWS_AS(solve_elliptic_kernel(
                      kBall, sp, ExteriorData::time_dependent([](double, const Vec&) {
                        return 1.0;
                      }),
                      Vec(0.0)),
                  InputError);
  CHECK_THROWS_AS(solve_elliptic_kernel(Domain::ball(Vec::zero(2), 1.0), StableParams(2, 1.0), g,
                                        Vec(0.0, 0.0)),
                  InputError);

  CHECK_THROWS_AS(green_potential_ball(kHalf, sp, constant_one(), Vec(0.5)), InputError);

  CHECK_THROWS_AS(solve_elliptic_mc(kBall, sp, ExteriorData::point_mass(Vec(2.0), 1.0),
                                    Vec(0.0), mc),
                  InputError);
  CHECK_THROWS_AS(solve_elliptic_mc(comp, sp, g, Vec(2.0), mc), InputError);

  CHECK_THROWS_AS(solve_parabolic_mc(kBall, sp, g, -1.0, Vec(0.0), mc), InputError);
  CHECK_THROWS_AS(
      solve_parabolic_mc(kBall, sp, ExteriorData::point_mass(Vec(2.0), 1.0), 1.0, Vec(0.0), mc),
      InputError);

  // a sweep that cannot reach its tail bound within the octave budget
  QuadratureOptions tiny;
  tiny.max_octaves = 3;
  CHECK_THROWS_AS(solve_elliptic_kernel(kBall, sp, g, Vec(0.0), tiny), ToleranceError);

  CHECK_THROWS_AS(SolutionField::elliptic_quadrature(kHalf, sp, g, constant_one()), InputError);
}
