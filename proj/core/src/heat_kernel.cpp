#include <cmath>
#include <complex>

#include "fracdir/kernels.hpp"
#include "fracdir/quad.hpp"

// Fourier inversion of exp(-t|xi|^alpha). After the self-similar reduction
// p(t,x) = t^{-d/alpha} q(|x| t^{-1/alpha}) everything happens at t = 1.
//
// d = 1: q(rho) = (1/pi) Re int_0^inf exp(i rho z - z^alpha) dz. On the real
// axis the integrand oscillates ~rho times over its support, so for large rho
// the ray is rotated to angle phi where the integrand decays monotonically:
// phi = pi/2 for alpha <= 1 (|F| = exp(-rho s - s^alpha cos(pi alpha/2))),
// phi = pi/(2 alpha) for alpha > 1 (z^alpha becomes purely imaginary and
// |F| = exp(-rho s sin phi)). Justified by Cauchy's theorem: the integrand is
// entire in the sector and the arc contribution vanishes.
//
// d in {2,3}: subordination q(rho) = int (4 pi s)^{-d/2} e^{-rho^2/(4s)} g(s) ds
// with g the one-sided alpha/2-stable density (Zolotarev integral).

namespace fracdir {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double cauchy_profile(int d, double rho) {
  // alpha = 1: q(rho) = Gamma((d+1)/2) / pi^{(d+1)/2} (1 + rho^2)^{-(d+1)/2}
  double g = std::tgamma(0.5 * (d + 1));
  return g * std::pow(kPi, -0.5 * (d + 1)) * std::pow(1.0 + rho * rho, -0.5 * (d + 1));
}

double profile_at_zero(int d, double alpha) {
  // (2 pi)^{-d} |S^{d-1}| Gamma(d/alpha) / alpha
  double sphere = 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
  return std::pow(2.0 * kPi, -d) * sphere * std::tgamma(d / alpha) / alpha;
}

double stable1d_profile(double alpha, double rho) {
  if (rho < 1e-8) return profile_at_zero(1, alpha);

  const std::complex<double> I(0.0, 1.0);
  double phi;
  if (alpha <= 1.0) {
    phi = 0.5 * kPi;
  } else if (rho <= 2.0) {
    // few oscillations here; plain real-axis inversion with the 1e-16 cutoff
    double ucut = std::pow(36.8, 1.0 / alpha) + 1.0;
    auto f = [&](double u) { return std::cos(rho * u) * std::exp(-std::pow(u, alpha)); };
    return gk_integrate(f, 0.0, ucut, 1e-12, 15).value / kPi;
  } else {
    phi = 0.5 * kPi / alpha;
  }

  const std::complex<double> ray = std::exp(I * phi);
  auto integrand = [&](double s) {
    std::complex<double> z = s * ray;
    std::complex<double> F = std::exp(I * rho * z - std::pow(z, alpha)) * ray;
    return F.real();
  };

  // cutoff where |F| < 1e-18: rho s sin(phi) + cos(alpha phi) s^alpha >= 41
  double c = std::cos(alpha * phi); // >= 0 on the chosen ray
  double s_by_rho = 41.0 / std::max(rho * std::sin(phi), 1e-300);
  double s_cut = s_by_rho;
  if (c > 1e-14) s_cut = std::min(s_cut, std::pow(41.0 / c, 1.0 / alpha));

  return gk_integrate(integrand, 0.0, s_cut, 1e-12, 15).value / kPi;
}

double subordinated_profile(int d, double alpha, double rho) {
  if (rho < 1e-8) return profile_at_zero(d, alpha);
  const double ap = 0.5 * alpha;
  // mass of the s-integral sits around s ~ max(rho^2, 1); integrate the log
  // coordinate over a generous window around it
  double u0 = std::log(std::max(rho * rho * 0.05, 1e-3));
  double u1 = std::log(std::max(rho * rho * 40.0, 1e3)) + 40.0 / alpha;
  auto f = [&](double u) {
    double s = std::exp(u);
    double gauss = std::pow(4.0 * kPi * s, -0.5 * d) * std::exp(-rho * rho / (4.0 * s));
    return gauss * one_sided_stable_density(ap, s) * s;
  };
  return gk_integrate(f, u0 - 30.0, u1, 1e-10, 15).value;
}

} // namespace

double one_sided_stable_density(double a, double x) {
  if (!(a > 0.0 && a < 1.0))
    throw InputError("one_sided_stable_density: index must be in (0,1)");
  if (!(x > 0.0)) return 0.0;

  if (a == 0.5) {
    // Laplace transform exp(-sqrt(lambda)): x^{-3/2} exp(-1/(4x)) / (2 sqrt(pi))
    return std::exp(-0.25 / x) / (2.0 * std::sqrt(kPi) * std::pow(x, 1.5));
  }

  // Zolotarev: g(x) = a/(1-a) (1/pi) x^{-1/(1-a)}
  //                 * int_0^pi A(phi) exp(-A(phi) x^{-a/(1-a)}) dphi,
  // A(phi) = sin(a phi)^{a/(1-a)} sin((1-a) phi) / sin(phi)^{1/(1-a)}.
  const double u = std::pow(x, -a / (1.0 - a));
  auto A = [&](double phi) {
    if (phi <= 0.0 || phi >= kPi) return 0.0;
    double la = std::log(std::sin(a * phi));
    double lb = std::log(std::sin((1.0 - a) * phi));
    double ls = std::log(std::sin(phi));
    return std::exp(a / (1.0 - a) * la + lb - ls / (1.0 - a));
  };
  auto f = [&](double phi) {
    double Av = A(phi);
    if (!(Av > 0.0)) return 0.0;
    double e = Av * u;
    return e > 700.0 ? 0.0 : Av * std::exp(-e);
  };
  double integral = gk_integrate(f, 0.0, kPi, 1e-11, 15).value;
  return a / (1.0 - a) / kPi * std::pow(x, -1.0 / (1.0 - a)) * integral;
}

double free_heat_kernel(const StableParams& sp, double t, const Vec& x) {
  if (!(t > 0.0)) throw InputError("free_heat_kernel: t must be positive");
  if (x.dim != sp.d) throw InputError("free_heat_kernel: dimension mismatch");
  double scale = std::pow(t, -1.0 / sp.alpha);
  double rho = x.norm() * scale;
  double amp = std::pow(t, -static_cast<double>(sp.d) / sp.alpha);
  if (std::fabs(sp.alpha - 1.0) < 1e-12) return amp * cauchy_profile(sp.d, rho);
  if (sp.d == 1) return amp * stable1d_profile(sp.alpha, rho);
  return amp * subordinated_profile(sp.d, sp.alpha, rho);
}

double free_heat_kernel_subordination(const StableParams& sp, double t, const Vec& x) {
  if (!(t > 0.0)) throw InputError("free_heat_kernel_subordination: t must be positive");
  if (x.dim != sp.d) throw InputError("free_heat_kernel_subordination: dimension mismatch");
  double rho = x.norm() * std::pow(t, -1.0 / sp.alpha);
  double amp = std::pow(t, -static_cast<double>(sp.d) / sp.alpha);
  return amp * subordinated_profile(sp.d, sp.alpha, rho);
}

} // namespace fracdir
