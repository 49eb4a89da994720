#include <cmath>

#include "doctest.h"
#include "fracdir/geometry.hpp"
#include "json.hpp"

using namespace fracdir;

TEST_CASE("half-space classification and distances are exact") {
  Domain H = Domain::half_space(2);
  CHECK(H.classify(Vec(0.3, -5.0)) == Region::Interior);
  CHECK(H.classify(Vec(0.0, 2.0)) == Region::Boundary);
  CHECK(H.classify(Vec(-1e-300, 2.0)) == Region::Exterior);
  CHECK(H.boundary_distance(Vec(0.3, -5.0)) == 0.3);
  CHECK(H.boundary_distance(Vec(-2.0, 1.0)) == 2.0);

  Domain Hm = Domain::half_space(1, -1);
  CHECK(Hm.classify(Vec(-0.5)) == Region::Interior);
  CHECK(Hm.classify(Vec(0.5)) == Region::Exterior);
}

TEST_CASE("ball and complement classification agree and flip") {
  Vec c(1.0, 2.0);
  Domain B = Domain::ball(c, 2.0);
  Domain Bc = B.complement();
  CHECK(Bc.kind() == DomainKind::BallComplement);
  Vec inside(1.0, 0.5);   // |x-c| = 1.5
  Vec edge(1.0, 0.0);     // |x-c| = 2 exactly
  Vec outside(1.0, 4.5);  // |x-c| = 2.5
  CHECK(B.classify(inside) == Region::Interior);
  CHECK(B.classify(edge) == Region::Boundary);
  CHECK(B.classify(outside) == Region::Exterior);
  CHECK(Bc.classify(inside) == Region::Exterior);
  CHECK(Bc.classify(edge) == Region::Boundary);
  CHECK(Bc.classify(outside) == Region::Interior);
  CHECK(B.boundary_distance(inside) == doctest::Approx(0.5));
  CHECK(B.boundary_distance(outside) == doctest::Approx(0.5));
  CHECK(B.bounded());
  CHECK(B.diameter() == doctest::Approx(4.0));
  CHECK(!Bc.bounded());
  CHECK(Bc.complement().kind() == DomainKind::Ball);
}

TEST_CASE("boundary distance gradient matches finite differences") {
  Domain B = Domain::ball(Vec(0.5, -1.0, 2.0), 1.5);
  Vec x(0.9, -0.4, 2.2);
  Vec g = B.boundary_distance_gradient(x);
  double h = 1e-6;
  for (int i = 0; i < 3; ++i) {
    Vec xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    double fd = (B.boundary_distance(xp) - B.boundary_distance(xm)) / (2 * h);
    CHECK(g[i] == doctest::Approx(fd).epsilon(1e-6));
  }
  CHECK_THROWS_AS(B.boundary_distance_gradient(Vec(0.5, -1.0, 2.0)), DomainError);
  CHECK_THROWS_AS(B.boundary_distance_gradient(Vec(2.0, -1.0, 2.0)), DomainError);
}

TEST_CASE("domain json round trip") {
  for (const Domain& d : {Domain::half_space(3, -1), Domain::ball(Vec(0.1, 0.2), 2.5),
                          Domain::ball_complement(Vec(1.0), 0.5)}) {
    nlohmann::json j = d;
    Domain back = j.get<Domain>();
    CHECK(back.kind() == d.kind());
    CHECK(back.dim() == d.dim());
    if (d.kind() != DomainKind::HalfSpace) {
      CHECK(back.radius() == d.radius());
      CHECK(distance(back.center(), d.center()) == 0.0);
    } else {
      CHECK(back.orientation() == d.orientation());
    }
  }
  nlohmann::json bad;
  bad["kind"] = "pyramid";
  CHECK_THROWS_AS(bad.get<Domain>(), InputError);
}

TEST_CASE("cutoff ramp is a plateaued bump with matching derivative") {
  PartitionFamily pf;
  CHECK(pf.ramp(pf.k3() - pf.ramp_width()) == 0.0);
  CHECK(pf.ramp(pf.k4() + pf.ramp_width()) == 0.0);
  CHECK(pf.ramp(pf.k3() + pf.ramp_width()) == doctest::Approx(1.0));
  CHECK(pf.ramp(pf.k4() - pf.ramp_width()) == doctest::Approx(1.0));
  CHECK(pf.ramp(0.5 * (pf.k3() + pf.k4())) == doctest::Approx(1.0));

  double h = 1e-7;
  for (double s = 1.2; s < 5.0; s += 0.07) {
    double fd = (pf.ramp(s + h) - pf.ramp(s - h)) / (2 * h);
    CHECK(pf.ramp_derivative(s) == doctest::Approx(fd).epsilon(5e-5));
  }
}

TEST_CASE("cutoff family is exactly self-similar across levels") {
  PartitionFamily pf;
  const double e = std::exp(1.0);
  for (double s : {0.001, 0.37, 2.0, 41.7}) {
    for (int n : {-15, -1, 0, 1, 23}) {
      CHECK(pf.zeta_of_dist(n, e * s) == doctest::Approx(pf.zeta_of_dist(n + 1, s)).epsilon(1e-13));
    }
  }
}

TEST_CASE("cutoff supports stay inside their dyadic distance band") {
  PartitionFamily pf;
  for (int n : {-8, 0, 11}) {
    double lo = pf.k1() * std::exp(-n), hi = pf.k2() * std::exp(-n);
    CHECK(pf.zeta_of_dist(n, lo) == 0.0);
    CHECK(pf.zeta_of_dist(n, hi) == 0.0);
    CHECK(pf.zeta_of_dist(n, std::sqrt(lo * hi)) > 0.9);
    auto [a, b] = pf.support_range(std::sqrt(lo * hi));
    CHECK(a <= n);
    CHECK(n <= b);
  }
}

TEST_CASE("cutoff sums cover all scales with bounded overlap") {
  PartitionFamily pf;
  CHECK(pf.coverage_lower_bound() > 0.5);
  for (double dist = 1e-9; dist < 1e9; dist *= 1.618033) {
    auto [a, b] = pf.support_range(dist);
    CHECK(b - a <= 3);
    double sum = 0.0;
    for (int n = a; n <= b; ++n) sum += pf.zeta_of_dist(n, dist);
    CHECK(sum >= pf.coverage_lower_bound());
    CHECK(sum <= 3.0);
  }
}

TEST_CASE("cutoff slope scales like e^n with an n-independent constant") {
  PartitionFamily pf;
  auto max_scaled_slope = [&](int n) {
    double m = 0.0;
    for (double s = pf.k3() - pf.ramp_width(); s <= pf.k4() + pf.ramp_width(); s += 1e-3) {
      double dist = s * std::exp(-n);
      m = std::max(m, std::fabs(pf.zeta_dist_derivative(n, dist)) * std::exp(-n));
    }
    return m;
  };
  double base = max_scaled_slope(0);
  CHECK(base > 0.0);
  CHECK(base < 20.0);
  for (int n : {-20, -5, 7, 20}) {
    CHECK(max_scaled_slope(n) == doctest::Approx(base).epsilon(1e-10));
  }
}

TEST_CASE("cutoff derivative matches finite differences and vanishes off-region") {
  PartitionFamily pf;
  double h = 1e-7;
  for (double dist : {1.6, 2.4, 4.1}) {
    double fd = (pf.zeta_of_dist(0, dist + h) - pf.zeta_of_dist(0, dist - h)) / (2 * h);
    CHECK(pf.zeta_dist_derivative(0, dist) == doctest::Approx(fd).epsilon(5e-5));
  }
  Domain H = Domain::half_space(1);
  CHECK(pf.zeta(0, H, Vec(2.0)) > 0.0);
  CHECK(pf.zeta(0, H, Vec(-2.0)) == 0.0);
  CHECK(pf.zeta(0, H, Vec(0.0)) == 0.0);
}

TEST_CASE("regularized distance is comparable to boundary distance at every scale") {
  RegularizedDistance rd;
  CHECK(rd.ratio_lower() > 0.0);
  CHECK(rd.ratio_upper() >= rd.ratio_lower());
  CHECK(rd.ratio_upper() < 10.0);
  for (double dist = 1e-12; dist < 1e12; dist *= 2.03) {
    double ratio = rd.psi_of_dist(dist) / dist;
    CHECK(ratio >= rd.ratio_lower() * (1 - 1e-12));
    CHECK(ratio <= rd.ratio_upper() * (1 + 1e-12));
  }
}

TEST_CASE("regularized distance is exactly self-similar") {
  RegularizedDistance rd;
  const double e = std::exp(1.0);
  for (double dist : {1e-6, 0.02, 1.0, 300.0}) {
    CHECK(rd.psi_of_dist(e * dist) == doctest::Approx(e * rd.psi_of_dist(dist)).epsilon(1e-13));
    CHECK(rd.dpsi_of_dist(e * dist) == doctest::Approx(rd.dpsi_of_dist(dist)).epsilon(1e-12));
  }
}

TEST_CASE("regularized distance derivative is bounded and matches finite differences") {
  RegularizedDistance rd;
  double h = 1e-8;
  double max_slope = 0.0;
  for (double dist = 0.5; dist < std::exp(1.0) * 0.5; dist *= 1.0041) {
    double fd = (rd.psi_of_dist(dist + h * dist) - rd.psi_of_dist(dist - h * dist)) / (2 * h * dist);
    CHECK(rd.dpsi_of_dist(dist) == doctest::Approx(fd).epsilon(1e-5));
    max_slope = std::max(max_slope, std::fabs(rd.dpsi_of_dist(dist)));
  }
  CHECK(max_slope < 10.0); // one period scans the global bound by self-similarity
}

TEST_CASE("regularized distance second derivative obeys the 1/d scaling") {
  RegularizedDistance rd;
  const double e = std::exp(1.0);
  auto second = [&](double dist) {
    double h = 1e-5 * dist;
    return (rd.psi_of_dist(dist + h) - 2 * rd.psi_of_dist(dist) + rd.psi_of_dist(dist - h)) /
           (h * h);
  };
  for (double dist = 0.6; dist < 0.6 * e; dist *= 1.09) {
    // psi''(e d) = psi''(d)/e exactly, so |psi'' * d| has the same sup at all scales
    CHECK(second(e * dist) * e == doctest::Approx(second(dist)).epsilon(1e-3));
  }
}

TEST_CASE("regularized distance evaluates on regions with guards") {
  RegularizedDistance rd;
  Domain B = Domain::ball(Vec(0.0, 0.0), 1.0);
  Vec x(0.3, 0.2);
  double dist = B.boundary_distance(x);
  CHECK(rd.psi(B, x) == doctest::Approx(rd.psi_of_dist(dist)));
  CHECK(rd.psi(B, Vec(1.0, 0.0)) == 0.0);
  CHECK_THROWS_AS(rd.psi(B, Vec(2.0, 0.0)), DomainError);

  Vec g = rd.psi_grad(B, x);
  double h = 1e-6;
  for (int i = 0; i < 2; ++i) {
    Vec xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    double fd = (rd.psi(B, xp) - rd.psi(B, xm)) / (2 * h);
    CHECK(g[i] == doctest::Approx(fd).epsilon(1e-5));
  }
  CHECK_THROWS_AS(rd.psi_grad(B, Vec(1.0, 0.0)), DomainError);
}
