#pragma once

#include <limits>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fracdir/error.hpp"
#include "fracdir/vec.hpp"

namespace fracdir {

enum class Region { Interior, Boundary, Exterior };

enum class DomainKind { HalfSpace, Ball, BallComplement };

// Model domains with exact signed geometry: the half-space {x1 > 0} (or its
// mirror), the open ball, and the complement of a closed ball. The complement
// kind exists because norms are taken both over the domain and over the
// region carrying the exterior datum.
class Domain {
public:
  static Domain half_space(int dim, int orientation = +1);
  static Domain ball(const Vec& center, double radius);
  static Domain ball_complement(const Vec& center, double radius);

  DomainKind kind() const { return kind_; }
  int dim() const { return dim_; }
  const Vec& center() const { return center_; }
  double radius() const { return radius_; }
  int orientation() const { return orientation_; }

  bool bounded() const { return kind_ == DomainKind::Ball; }
  double diameter() const {
    return bounded() ? 2.0 * radius_ : std::numeric_limits<double>::infinity();
  }

  // Exact classification; no epsilon snapping. Points land on Boundary only
  // when the arithmetic does.
  Region classify(const Vec& x) const;

  // Distance to the boundary, defined on both sides.
  double boundary_distance(const Vec& x) const;

  // Unit gradient of the boundary distance. Undefined on the boundary and at
  // the center of a ball (DomainError).
  Vec boundary_distance_gradient(const Vec& x) const;

  // The region on the other side of the boundary.
  Domain complement() const;

  Domain() = default; // one-dimensional right half line; placeholder for deserialization

private:
  void check(const Vec& x) const;

  DomainKind kind_ = DomainKind::HalfSpace;
  int dim_ = 1;
  Vec center_;
  double radius_ = 0.0;
  int orientation_ = +1; // half-space only: interior is {orientation * x1 > 0}
};

void to_json(nlohmann::json& j, const Domain& d);
void from_json(const nlohmann::json& j, Domain& d);

// Family of cutoffs zeta_n living on boundary-distance shells. The profile is
// a C^inf two-sided ramp M supported in [k3 - w, k4 + w] with plateau
// [k3 + w, k4 - w], evaluated as zeta_n(x) = M(d_x e^n). This makes the family
// exactly self-similar (zeta_n(e s) = zeta_{n+1}(s)), keeps the support inside
// {k1 e^{-n} < d_x < k2 e^{-n}}, and bounds |d/dx zeta_n| by a single multiple
// of e^n for every n.
class PartitionFamily {
public:
  explicit PartitionFamily(double k1 = 1.0, double k2 = 7.389056098930650227230427);

  double k1() const { return k1_; }
  double k2() const { return k2_; }
  double k3() const { return k3_; }
  double k4() const { return k4_; }
  double ramp_width() const { return w_; }

  // Profile on the base shell (n = 0) as a function of boundary distance.
  double ramp(double s) const;
  double ramp_derivative(double s) const;

  double zeta_of_dist(int n, double dist) const;
  double zeta_dist_derivative(int n, double dist) const; // d/d(dist)

  // zeta_n at a point of the region; zero off the region interior.
  double zeta(int n, const Domain& region, const Vec& x) const;

  // Indices n for which zeta_n(dist) can be nonzero (inclusive range).
  std::pair<int, int> support_range(double dist) const;

  // Calibrated lower bound of sum_n zeta_n over one log-period (the family is
  // exactly log-periodic, so one period determines the global bound).
  double coverage_lower_bound() const { return coverage_; }

private:
  double k1_, k2_, k3_, k4_, w_;
  double coverage_ = 0.0;
};

// psi(x) = sum_n e^{-n} zeta_n(x), a regularized boundary distance with
// c1 d_x <= psi <= c2 d_x. The ratio psi/d_x is log-periodic in d_x, so the
// comparability constants are calibrated exactly over one period.
class RegularizedDistance {
public:
  explicit RegularizedDistance(PartitionFamily pf = PartitionFamily());

  double psi_of_dist(double dist) const;
  double dpsi_of_dist(double dist) const;

  double psi(const Domain& region, const Vec& x) const;      // DomainError off the region
  Vec psi_grad(const Domain& region, const Vec& x) const;    // DomainError on the boundary

  double ratio_lower() const { return c1_; }
  double ratio_upper() const { return c2_; }
  const PartitionFamily& partition() const { return pf_; }

private:
  PartitionFamily pf_;
  double c1_ = 0.0, c2_ = 0.0;
};

} // namespace fracdir
