#include "fracdir/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fracdir {

Domain Domain::half_space(int dim, int orientation) {
  Vec::check_dim(dim);
  if (orientation != 1 && orientation != -1)
    throw InputError("Domain::half_space: orientation must be +1 or -1");
  Domain d;
  d.kind_ = DomainKind::HalfSpace;
  d.dim_ = dim;
  d.center_ = Vec::zero(dim);
  d.orientation_ = orientation;
  return d;
}

Domain Domain::ball(const Vec& center, double radius) {
  Vec::check_dim(center.dim);
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw InputError("Domain::ball: radius must be positive and finite");
  Domain d;
  d.kind_ = DomainKind::Ball;
  d.dim_ = center.dim;
  d.center_ = center;
  d.radius_ = radius;
  return d;
}

Domain Domain::ball_complement(const Vec& center, double radius) {
  Domain d = ball(center, radius);
  d.kind_ = DomainKind::BallComplement;
  return d;
}

void Domain::check(const Vec& x) const {
  if (x.dim != dim_)
    throw InputError("Domain: point dimension " + std::to_string(x.dim) +
                     " does not match domain dimension " + std::to_string(dim_));
}

Region Domain::classify(const Vec& x) const {
  check(x);
  switch (kind_) {
    case DomainKind::HalfSpace: {
      double s = orientation_ * x[0];
      if (s > 0.0) return Region::Interior;
      if (s < 0.0) return Region::Exterior;
      return Region::Boundary;
    }
    case DomainKind::Ball: {
      double q = (x - center_).norm2();
      double r2 = radius_ * radius_;
      if (q < r2) return Region::Interior;
      if (q > r2) return Region::Exterior;
      return Region::Boundary;
    }
    case DomainKind::BallComplement: {
      double q = (x - center_).norm2();
      double r2 = radius_ * radius_;
      if (q > r2) return Region::Interior;
      if (q < r2) return Region::Exterior;
      return Region::Boundary;
    }
  }
  throw InputError("Domain::classify: unreachable");
}

double Domain::boundary_distance(const Vec& x) const {
  check(x);
  if (kind_ == DomainKind::HalfSpace) return std::fabs(x[0]);
  return std::fabs((x - center_).norm() - radius_);
}

Vec Domain::boundary_distance_gradient(const Vec& x) const {
  check(x);
  if (kind_ == DomainKind::HalfSpace) {
    if (x[0] == 0.0)
      throw DomainError("boundary_distance_gradient: undefined on the boundary");
    Vec g = Vec::zero(dim_);
    g[0] = x[0] > 0.0 ? 1.0 : -1.0;
    return g;
  }
  Vec rel = x - center_;
  double rho = rel.norm();
  if (rho < 1e-14 * radius_)
    throw DomainError("boundary_distance_gradient: undefined at the ball center");
  if (rho == radius_)
    throw DomainError("boundary_distance_gradient: undefined on the boundary");
  double s = rho > radius_ ? 1.0 : -1.0;
  return (s / rho) * rel;
}

Domain Domain::complement() const {
  switch (kind_) {
    case DomainKind::HalfSpace:
      return half_space(dim_, -orientation_);
    case DomainKind::Ball:
      return ball_complement(center_, radius_);
    case DomainKind::BallComplement:
      return ball(center_, radius_);
  }
  throw InputError("Domain::complement: unreachable");
}

void to_json(nlohmann::json& j, const Domain& d) {
  switch (d.kind()) {
    case DomainKind::HalfSpace:
      j = {{"kind", "half_space"}, {"dim", d.dim()}, {"orientation", d.orientation()}};
      return;
    case DomainKind::Ball:
    case DomainKind::BallComplement: {
      std::vector<double> c(static_cast<std::size_t>(d.dim()));
      for (int i = 0; i < d.dim(); ++i) c[static_cast<std::size_t>(i)] = d.center()[i];
      j = {{"kind", d.kind() == DomainKind::Ball ? "ball" : "ball_complement"},
           {"center", c},
           {"radius", d.radius()}};
      return;
    }
  }
}

void from_json(const nlohmann::json& j, Domain& d) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "half_space") {
    d = Domain::half_space(j.at("dim").get<int>(), j.value("orientation", 1));
    return;
  }
  if (kind == "ball" || kind == "ball_complement") {
    auto c = j.at("center").get<std::vector<double>>();
    if (c.empty() || c.size() > 3)
      throw InputError("Domain from_json: center must have 1..3 coordinates");
    Vec v = Vec::zero(static_cast<int>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) v[static_cast<int>(i)] = c[i];
    double r = j.at("radius").get<double>();
    d = (kind == "ball") ? Domain::ball(v, r) : Domain::ball_complement(v, r);
    return;
  }
  throw InputError("Domain from_json: unknown kind '" + kind + "'");
}

namespace {

// C^inf step: 0 for t <= -1, 1 for t >= 1.
double smoothstep(double t) {
  if (t <= -1.0) return 0.0;
  if (t >= 1.0) return 1.0;
  double u = 0.5 * (1.0 + t);
  double a = std::exp(-1.0 / u);
  double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

double smoothstep_derivative(double t) {
  if (t <= -1.0 || t >= 1.0) return 0.0;
  double u = 0.5 * (1.0 + t);
  double a = std::exp(-1.0 / u);
  double b = std::exp(-1.0 / (1.0 - u));
  double ap = a / (u * u);
  double bp = -b / ((1.0 - u) * (1.0 - u));
  double s = a + b;
  return 0.5 * (ap * s - a * (ap + bp)) / (s * s);
}

} // namespace

PartitionFamily::PartitionFamily(double k1, double k2) : k1_(k1), k2_(k2) {
  if (!(k1 > 0.0) || !(k2 > k1))
    throw InputError("PartitionFamily: need 0 < k1 < k2");
  const double half_e = 1.6487212707001281468486507878142; // e^{1/2}
  k3_ = k1_ * half_e;
  k4_ = k2_ / half_e;
  w_ = std::min(k3_, 1.0) / 4.0;
  if (!(k3_ - w_ > k1_ && k4_ + w_ < k2_))
    throw InputError("PartitionFamily: ramp width leaves the (k1, k2) shell");
  if (!(k4_ > k3_ + 2.0 * w_))
    throw InputError("PartitionFamily: shell too thin for the ramp plateau");

  // Calibrate the lower bound of sum_n zeta_n over one log-period.
  const int samples = 4096;
  double cmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples; ++i) {
    double dist = k3_ * std::exp(static_cast<double>(i) / samples);
    auto [n0, n1] = support_range(dist);
    double sum = 0.0;
    for (int n = n0; n <= n1; ++n) sum += zeta_of_dist(n, dist);
    cmin = std::min(cmin, sum);
  }
  coverage_ = cmin;
  if (!(coverage_ > 1e-6))
    throw InputError("PartitionFamily: family does not cover (gap between shells)");
}

double PartitionFamily::ramp(double s) const {
  return smoothstep((s - k3_) / w_) * smoothstep((k4_ - s) / w_);
}

double PartitionFamily::ramp_derivative(double s) const {
  double up = smoothstep((s - k3_) / w_);
  double dn = smoothstep((k4_ - s) / w_);
  double upd = smoothstep_derivative((s - k3_) / w_) / w_;
  double dnd = -smoothstep_derivative((k4_ - s) / w_) / w_;
  return upd * dn + up * dnd;
}

double PartitionFamily::zeta_of_dist(int n, double dist) const {
  if (!(dist > 0.0)) return 0.0;
  // dist * e^n evaluated via logs to survive extreme magnitudes
  double s = std::exp(std::log(dist) + static_cast<double>(n));
  return ramp(s);
}

double PartitionFamily::zeta_dist_derivative(int n, double dist) const {
  if (!(dist > 0.0)) return 0.0;
  double s = std::exp(std::log(dist) + static_cast<double>(n));
  if (s <= k3_ - w_ || s >= k4_ + w_) return 0.0;
  // d/d(dist) M(dist e^n) = M'(s) e^n = M'(s) s / dist
  return ramp_derivative(s) * s / dist;
}

double PartitionFamily::zeta(int n, const Domain& region, const Vec& x) const {
  if (region.classify(x) != Region::Interior) return 0.0;
  return zeta_of_dist(n, region.boundary_distance(x));
}

std::pair<int, int> PartitionFamily::support_range(double dist) const {
  if (!(dist > 0.0)) return {1, 0};
  double ld = std::log(dist);
  int lo = static_cast<int>(std::floor(std::log(k3_ - w_) - ld));
  int hi = static_cast<int>(std::ceil(std::log(k4_ + w_) - ld));
  return {lo, hi};
}

RegularizedDistance::RegularizedDistance(PartitionFamily pf) : pf_(std::move(pf)) {
  const int samples = 4096;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int i = 0; i <= samples; ++i) {
    double dist = std::exp(static_cast<double>(i) / samples);
    double r = psi_of_dist(dist) / dist;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  c1_ = lo;
  c2_ = hi;
}

double RegularizedDistance::psi_of_dist(double dist) const {
  if (!(dist > 0.0)) return 0.0;
  auto [n0, n1] = pf_.support_range(dist);
  double ld = std::log(dist);
  double sum = 0.0;
  // e^{-n} M(dist e^n) = dist * M(s)/s with s = dist e^n, stable at any scale
  for (int n = n0; n <= n1; ++n) {
    double s = std::exp(ld + static_cast<double>(n));
    double m = pf_.ramp(s);
    if (m != 0.0) sum += m / s;
  }
  return dist * sum;
}

double RegularizedDistance::dpsi_of_dist(double dist) const {
  if (!(dist > 0.0)) return 0.0;
  auto [n0, n1] = pf_.support_range(dist);
  double ld = std::log(dist);
  double sum = 0.0;
  // d/d(dist) sum_n e^{-n} M(dist e^n) = sum_n M'(s)
  for (int n = n0; n <= n1; ++n) {
    double s = std::exp(ld + static_cast<double>(n));
    sum += pf_.ramp_derivative(s);
  }
  return sum;
}

double RegularizedDistance::psi(const Domain& region, const Vec& x) const {
  Region r = region.classify(x);
  if (r == Region::Exterior)
    throw DomainError("RegularizedDistance::psi: point is off the region");
  if (r == Region::Boundary) return 0.0;
  return psi_of_dist(region.boundary_distance(x));
}

Vec RegularizedDistance::psi_grad(const Domain& region, const Vec& x) const {
  Region r = region.classify(x);
  if (r != Region::Interior)
    throw DomainError("RegularizedDistance::psi_grad: undefined off the region interior");
  double d = region.boundary_distance(x);
  return dpsi_of_dist(d) * region.boundary_distance_gradient(x);
}

} // namespace fracdir
