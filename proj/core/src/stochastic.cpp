#include "fracdir/stochastic.hpp"

#include <cmath>

namespace fracdir {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
} // namespace

// Chambers-Mallows-Stuck draw of the standard symmetric law with
// characteristic function exp(-|xi|^alpha).
double cms_symmetric(double alpha, RngStream& rng) {
  double V = kPi * (rng.u01_open() - 0.5);
  if (std::fabs(alpha - 1.0) < 1e-12) return std::tan(V);
  double W = rng.exponential();
  double s = std::sin(alpha * V) / std::pow(std::cos(V), 1.0 / alpha);
  return s * std::pow(std::cos((1.0 - alpha) * V) / W, (1.0 - alpha) / alpha);
}

// Kanter's sampler for the one-sided law with Laplace transform exp(-lambda^a),
// 0 < a < 1. Same A(u) as the density integral, so the statistical tests of
// the sampler double as tests of the density formula.
double kanter_one_sided(double a, RngStream& rng) {
  double U = kPi * rng.u01_open();
  double W = rng.exponential();
  double la = std::log(std::sin(a * U));
  double lb = std::log(std::sin((1.0 - a) * U));
  double ls = std::log(std::sin(U));
  double A = std::exp(a / (1.0 - a) * la + lb - ls / (1.0 - a));
  return std::pow(A / W, (1.0 - a) / a);
}

Vec sample_increment(const StableParams& sp, double t, RngStream& rng) {
  if (!(t > 0)) throw InputError("sample_increment: t must be positive");
  if (sp.d == 1) {
    return Vec(std::pow(t, 1.0 / sp.alpha) * cms_symmetric(sp.alpha, rng));
  }
  // X_t = sqrt(2 S_t) Z with S_t the alpha/2 subordinator at time t:
  // E exp(-lambda S_t) = exp(-t lambda^{alpha/2}), so S_t = t^{2/alpha} S_1.
  double S = std::pow(t, 2.0 / sp.alpha) * kanter_one_sided(0.5 * sp.alpha, rng);
  double amp = std::sqrt(2.0 * S);
  Vec out = Vec::zero(sp.d);
  for (int i = 0; i < sp.d; ++i) out[i] = amp * rng.normal();
  return out;
}

Vec ball_exit_sample(const Domain& ball, const StableParams& sp, const Vec& x, RngStream& rng) {
  if (ball.kind() != DomainKind::Ball)
    throw InputError("ball_exit_sample: domain must be a ball");
  if (x.dim != sp.d || ball.dim() != sp.d)
    throw InputError("ball_exit_sample: dimension mismatch");
  const double r = ball.radius();
  const Vec c = ball.center();
  const double rho_x = distance(x, c);
  if (!(rho_x < r)) throw DomainError("ball_exit_sample: start point must be inside the ball");

  auto center_draw = [&]() {
    // |Z - c| = r / sqrt(V), V ~ Beta(alpha/2, 1 - alpha/2); direction uniform
    double V = rng.beta(0.5 * sp.alpha, 1.0 - 0.5 * sp.alpha);
    double radius = r / std::sqrt(V);
    return c + radius * rng.direction(sp.d);
  };

  if (rho_x == 0.0) return center_draw();

  // Rejection against the center law. The density ratio
  //   K(x,z)/K(c,z) = ((r^2 - rho_x^2)/r^2)^{alpha/2} (|c-z|/|x-z|)^d
  // is maximized over |c-z| > r at |c-z| = r, giving the bound M below.
  const double shape = std::pow((r * r - rho_x * rho_x) / (r * r), 0.5 * sp.alpha);
  const double M = shape * std::pow(r / (r - rho_x), sp.d);
  for (int trial = 0; trial < 100000; ++trial) {
    Vec z = center_draw();
    double ratio = shape * std::pow(distance(c, z) / distance(x, z), sp.d);
    if (rng.u01() * M <= ratio) return z;
  }
  throw StatisticalError("ball_exit_sample: rejection sampler failed to accept (start too close to the boundary)");
}

ExitRecord walk_on_spheres(const Domain& domain, const StableParams& sp, Vec x, RngStream& rng,
                           int max_steps, double radius_cap) {
  if (domain.classify(x) != Region::Interior)
    throw DomainError("walk_on_spheres: start point must be inside the domain");
  if (max_steps < 1) throw InputError("walk_on_spheres: max_steps must be >= 1");

  for (int step = 1; step <= max_steps; ++step) {
    double r = std::min(domain.boundary_distance(x), radius_cap);
    x = ball_exit_sample(Domain::ball(x, r), sp, x, rng);
    if (domain.classify(x) != Region::Interior) {
      ExitRecord rec;
      rec.position = x;
      rec.steps = step;
      rec.status = ExitStatus::Exited;
      return rec;
    }
  }
  ExitRecord rec;
  rec.position = x;
  rec.steps = max_steps;
  rec.status = ExitStatus::Censored;
  return rec;
}

ExitRecord killed_path(const Domain& domain, const StableParams& sp, Vec x, double dt,
                       double horizon, RngStream& rng, int max_steps) {
  if (domain.classify(x) != Region::Interior)
    throw DomainError("killed_path: start point must be inside the domain");
  if (!(dt > 0)) throw InputError("killed_path: dt must be positive");

  long long allowed = -1; // unlimited
  if (horizon > 0 && std::isfinite(horizon))
    allowed = static_cast<long long>(std::floor(horizon / dt + 1e-9));

  ExitRecord rec;
  int step = 0;
  while (step < max_steps) {
    if (allowed >= 0 && step >= allowed) {
      rec.position = x;
      rec.steps = step;
      rec.status = ExitStatus::Survived;
      return rec;
    }
    x = x + sample_increment(sp, dt, rng);
    ++step;
    if (domain.classify(x) != Region::Interior) {
      rec.position = x;
      rec.steps = step;
      rec.time = dt * static_cast<double>(step);
      rec.status = ExitStatus::Exited;
      return rec;
    }
  }
  rec.position = x;
  rec.steps = step;
  rec.status = ExitStatus::Censored;
  return rec;
}

} // namespace fracdir
