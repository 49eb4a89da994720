#include "fracdir/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fracdir/quad.hpp"
#include "fracdir/stats.hpp"
#include "fracdir/stochastic.hpp"

namespace fracdir {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

StableParams::StableParams(int dim, double a) : d(dim), alpha(a) {
  Vec::check_dim(dim);
  if (!(a > 0.0 && a < 2.0))
    throw InputError("StableParams: alpha must lie in (0,2), got " + std::to_string(a));
  // |Gamma(-alpha/2)| = pi / (sin(pi alpha/2) Gamma(1 + alpha/2)) by reflection
  c_d_ = std::pow(2.0, alpha) * std::tgamma(0.5 * (d + alpha)) * std::sin(0.5 * kPi * alpha) *
         std::tgamma(1.0 + 0.5 * alpha) / std::pow(kPi, 0.5 * d + 1.0);
}

double poisson_kernel_constant(const StableParams& sp) {
  return std::tgamma(0.5 * sp.d) * std::sin(0.5 * kPi * sp.alpha) /
         std::pow(kPi, 0.5 * sp.d + 1.0);
}

double poisson_kernel(const Domain& domain, const StableParams& sp, const Vec& x, const Vec& z) {
  if (x.dim != sp.d || z.dim != sp.d)
    throw InputError("poisson_kernel: dimension mismatch");
  if (domain.classify(x) != Region::Interior)
    throw DomainError("poisson_kernel: x must be inside the domain");
  if (domain.classify(z) != Region::Exterior)
    throw DomainError("poisson_kernel: z must be strictly outside the closure");

  const double C = poisson_kernel_constant(sp);
  const double dist = distance(x, z);

  switch (domain.kind()) {
    case DomainKind::HalfSpace: {
      double dx = domain.boundary_distance(x);
      double dz = domain.boundary_distance(z);
      return C * std::pow(dx / dz, 0.5 * sp.alpha) * std::pow(dist, -sp.d);
    }
    case DomainKind::Ball: {
      double r = domain.radius();
      double qx = (x - domain.center()).norm2();
      double qz = (z - domain.center()).norm2();
      return C * std::pow((r * r - qx) / (qz - r * r), 0.5 * sp.alpha) * std::pow(dist, -sp.d);
    }
    case DomainKind::BallComplement:
      throw DomainError("poisson_kernel: closed form available for half-space and ball only");
  }
  throw InputError("poisson_kernel: unreachable");
}

namespace {

// J = int_0^{r0} s^{a/2-1} (1+s)^{-d/2} ds. Head (s <= 1): s = tau^{8/a}
// lifts the integrand to tau^3 (1+tau^{8/a})^{-d/2}, C^4 on [0,1] for every
// a < 2, so fixed-order panels converge at full precision. Tail (s > 1),
// in u = log s: e^{pu} (1+e^{-u})^{-d/2} with p = (a-d)/2; past u = 36 the
// second factor is 1 - (d/2) e^{-u} to machine precision and the remaining
// integral closes in elementary terms.
double ball_green_profile(double r0, double a, int d) {
  double J;
  const double q = 8.0 / a;
  double m = std::min(r0, 1.0);
  auto head_f = [&](double tau) {
    return tau * tau * tau * std::pow(1.0 + std::pow(tau, q), -0.5 * d);
  };
  J = q * gk_integrate_abs(head_f, 0.0, std::pow(m, 1.0 / q), 1e-13, 1e-17, 8).value;
  if (r0 > 1.0) {
    const double p = 0.5 * (a - d);
    const double U = std::log(r0);
    const double uc = std::min(U, 36.0);
    auto tail_f = [&](double u) {
      return std::exp(p * u) * std::pow(1.0 + std::exp(-u), -0.5 * d);
    };
    J += gk_integrate_abs(tail_f, 0.0, uc, 1e-13, 1e-17, 10).value;
    if (U > uc) {
      auto seg = [&](double rate) {
        double z = rate * (U - uc);
        double em1 = std::fabs(z) < 1e-8 ? 1.0 + 0.5 * z : std::expm1(z) / z;
        return std::exp(rate * uc) * (U - uc) * em1;
      };
      J += seg(p) - 0.5 * d * seg(p - 1.0);
    }
  }
  return J;
}

double ball_green_assemble(double radius, double diff, double r0, double a, int d) {
  double B = std::tgamma(0.5 * d) /
             (std::pow(2.0, a) * std::pow(kPi, 0.5 * d) * std::pow(std::tgamma(0.5 * a), 2));
  double unit = B * std::pow(diff, a - d) * ball_green_profile(r0, a, d);
  return std::pow(radius, a - d) * unit;
}

}  // namespace

double green_function_ball(const Domain& ball, const StableParams& sp, const Vec& x, const Vec& y) {
  if (ball.kind() != DomainKind::Ball)
    throw InputError("green_function_ball: domain must be a ball");
  if (x.dim != sp.d || y.dim != sp.d)
    throw InputError("green_function_ball: dimension mismatch");
  if (ball.classify(x) != Region::Interior || ball.classify(y) != Region::Interior) return 0.0;

  const double r = ball.radius();
  Vec xs = (1.0 / r) * (x - ball.center());
  Vec ys = (1.0 / r) * (y - ball.center());
  double diff = distance(xs, ys);
  if (diff == 0.0)
    throw DomainError("green_function_ball: kernel is singular on the diagonal x == y");

  double r0 = (1.0 - xs.norm2()) * (1.0 - ys.norm2()) / (diff * diff);
  return ball_green_assemble(r, diff, r0, sp.alpha, sp.d);
}

double green_function_ball_ray(const Domain& ball, const StableParams& sp, const Vec& x,
                               const Vec& unit, double h) {
  if (ball.kind() != DomainKind::Ball)
    throw InputError("green_function_ball_ray: domain must be a ball");
  if (x.dim != sp.d || unit.dim != sp.d)
    throw InputError("green_function_ball_ray: dimension mismatch");
  if (!(h > 0.0)) throw InputError("green_function_ball_ray: separation must be positive");
  if (std::fabs(unit.norm2() - 1.0) > 1e-12)
    throw InputError("green_function_ball_ray: direction must have unit length");
  if (ball.classify(x) != Region::Interior) return 0.0;

  const double r = ball.radius();
  Vec xs = (1.0 / r) * (x - ball.center());
  const double hs = h / r;
  // 1 - |xs + hs u|^2 expanded so no digits of hs are lost against |xs|
  double one_m_ys2 = (1.0 - xs.norm2()) - hs * (2.0 * dot(xs, unit) + hs);
  if (!(one_m_ys2 > 0.0)) return 0.0;
  double r0 = (1.0 - xs.norm2()) * one_m_ys2 / (hs * hs);
  return ball_green_assemble(r, hs, r0, sp.alpha, sp.d);
}

namespace {

double envelope_R(double alpha, double t, double dist) {
  return std::min(1.0, std::pow(dist, 0.5 * alpha) / std::sqrt(t));
}

} // namespace

double envelope_value(const KernelBoundEnvelope& env, double t, const Vec& x, const Vec& z) {
  const StableParams& sp = env.params;
  const Domain& D = env.domain;
  if (x.dim != sp.d || z.dim != sp.d)
    throw InputError("envelope_value: dimension mismatch");
  const double a = sp.alpha;
  const double dist = distance(x, z);
  const double dx = D.boundary_distance(x);
  const double dz = D.boundary_distance(z);

  switch (env.kind) {
    case EnvelopeKind::TransitionDensity: {
      if (!(t > 0)) throw InputError("envelope_value: t must be positive");
      double v = envelope_R(a, t, dx) * envelope_R(a, t, dz) * free_heat_kernel(sp, t, x - z);
      if (D.bounded() && env.decay_rate > 0) v *= std::exp(-env.decay_rate * t);
      return v;
    }
    case EnvelopeKind::ParabolicPoisson: {
      if (!(t > 0)) throw InputError("envelope_value: t must be positive");
      double S = std::min(std::pow(t, -static_cast<double>(sp.d) / a - 1.0),
                          std::pow(dist, -static_cast<double>(sp.d) - a));
      return S * envelope_R(a, t, dx) / envelope_R(a, t, dz);
    }
    case EnvelopeKind::ParabolicPoissonFarField: {
      if (!(t > 0)) throw InputError("envelope_value: t must be positive");
      if (!D.bounded())
        throw InputError("envelope_value: far-field form applies to bounded domains");
      if (!(dz > D.diameter()))
        throw DomainError("envelope_value: far-field form needs d_z > diam(D)");
      double bulk = std::min(1.0, std::pow(t, -static_cast<double>(sp.d) / a - 0.5));
      return std::pow(dist, -sp.d) * bulk * envelope_R(a, t, dx) * std::pow(dz, -a);
    }
    case EnvelopeKind::EllipticPoissonHalfSpace:
      return std::pow(dx / dz, 0.5 * a) * std::pow(dist, -sp.d);
    case EnvelopeKind::EllipticPoissonBounded:
      if (!D.bounded())
        throw InputError("envelope_value: bounded elliptic form needs a bounded domain");
      return std::pow(dx, 0.5 * a) * std::pow(1.0 + dz, -0.5 * a) * std::pow(dz, -0.5 * a) *
             std::pow(dist, -sp.d);
  }
  throw InputError("envelope_value: unreachable");
}

QdEstimate qd_estimate_mc(const Domain& ball, const StableParams& sp, double t, const Vec& x,
                          const Vec& z, const McConfig& mc) {
  if (ball.kind() != DomainKind::Ball || sp.d != 1)
    throw InputError("qd_estimate_mc: implemented for the ball in dimension 1");
  if (!(t > 0)) throw InputError("qd_estimate_mc: t must be positive");
  if (ball.classify(x) != Region::Interior)
    throw DomainError("qd_estimate_mc: x must be inside the ball");
  if (ball.classify(z) != Region::Exterior)
    throw DomainError("qd_estimate_mc: z must be outside the closed ball");
  if (mc.paths < 1000)
    throw StatisticalError("qd_estimate_mc: too few paths for a histogram estimate");

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::function<double(std::size_t, RngStream&)> per_path = [&](std::size_t, RngStream& rng) {
    ExitRecord rec = killed_path(ball, sp, x, mc.dt, t, rng, mc.max_steps);
    return rec.status == ExitStatus::Survived ? rec.position[0] : nan;
  };
  std::vector<double> finals = run_paths<double>(mc.paths, mc.seed, mc.threads, per_path);

  std::vector<double> survivors;
  survivors.reserve(finals.size());
  for (double v : finals)
    if (v == v) survivors.push_back(v);

  QdEstimate est;
  est.paths = mc.paths;
  est.survivors = survivors.size();
  if (survivors.size() < 100)
    throw StatisticalError("qd_estimate_mc: only " + std::to_string(survivors.size()) +
                           " paths survive to t; increase paths or reduce t");

  const double zc = z[0];
  const double expo = -(1.0 + sp.alpha);

  // binless per-path estimator drives the error bar
  MeanAccumulator acc;
  for (double v : finals)
    acc.add(v == v ? sp.c_d() * std::pow(std::fabs(v - zc), expo) : 0.0);
  est.value_binless = acc.mean();
  est.stderr_value = acc.stderror();

  // Freedman-Diaconis histogram of the surviving density, then quadrature
  // against the jump kernel
  std::vector<double> sorted = survivors;
  std::sort(sorted.begin(), sorted.end());
  std::size_t m = sorted.size();
  double q1 = sorted[m / 4], q3 = sorted[(3 * m) / 4];
  double iqr = std::max(q3 - q1, 1e-12);
  double width = 2.0 * iqr * std::pow(static_cast<double>(m), -1.0 / 3.0);
  double lo = sorted.front(), hi = sorted.back();
  std::size_t nbins = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil((hi - lo) / width)), 1, 4096);
  double bw = (hi - lo) / static_cast<double>(nbins);
  if (!(bw > 0)) bw = 1e-12;
  std::vector<double> counts(nbins, 0.0);
  for (double v : sorted) {
    auto b = std::min<std::size_t>(nbins - 1,
                                   static_cast<std::size_t>((v - lo) / bw));
    counts[b] += 1.0;
  }
  double sum = 0.0;
  for (std::size_t b = 0; b < nbins; ++b) {
    double mid = lo + (static_cast<double>(b) + 0.5) * bw;
    sum += counts[b] * std::pow(std::fabs(mid - zc), expo);
  }
  est.value = sp.c_d() * sum / static_cast<double>(mc.paths);
  est.bins = nbins;
  return est;
}

} // namespace fracdir
