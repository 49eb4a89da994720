#include "fracdir/fraclap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fftw3.h>
#include <boost/math/quadrature/gauss.hpp>

#include "fracdir/quad.hpp"

namespace fracdir {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sphere_area(int d) {
  switch (d) {
    case 1: return 2.0;
    case 2: return 2.0 * M_PI;
    default: return 4.0 * M_PI;
  }
}

struct AngularKit {
  std::vector<Vec> dirs;
  std::vector<double> wts;  // sum to 1: the kit computes sphere averages
};

AngularKit make_kit(int d, const PvOptions& opt) {
  AngularKit kit;
  if (d == 1) {
    kit.dirs = {Vec(1.0)};
    kit.wts = {1.0};
    return kit;
  }
  if (d == 2) {
    // the integrand is even, so half the circle with equal weights averages it
    int m = std::max(8, opt.azimuth_points);
    for (int j = 0; j < m; ++j) {
      double th = M_PI * (j + 0.5) / m;
      kit.dirs.push_back(Vec(std::cos(th), std::sin(th)));
      kit.wts.push_back(1.0 / m);
    }
    return kit;
  }
  // d == 3: Gauss-Legendre in the polar cosine, midpoint in azimuth
  using gl = boost::math::quadrature::gauss<double, 16>;
  int m = std::max(8, opt.azimuth_points);
  for (std::size_t k = 0; k < gl::abscissa().size(); ++k) {
    for (double mu : {gl::abscissa()[k], -gl::abscissa()[k]}) {
      double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
      for (int j = 0; j < m; ++j) {
        double th = 2.0 * M_PI * (j + 0.5) / m;
        kit.dirs.push_back(Vec(s * std::cos(th), s * std::sin(th), mu));
        kit.wts.push_back(gl::weights()[k] / (2.0 * m));
      }
    }
  }
  return kit;
}

}  // namespace

PvResult fraclap_pv(const ScalarField& field, const StableParams& sp, const Vec& x,
                    const PvOptions& opt) {
  if (field.dim != sp.d || x.dim != sp.d)
    throw InputError("fraclap_pv: field, parameters and point disagree on dimension");
  if (!field.value) throw InputError("fraclap_pv: field has no evaluation rule");
  const double alpha = sp.alpha;
  const double sigma = sphere_area(sp.d);
  const double front = sp.c_d() * sigma;

  // kink-sphere crossing radii around x; the smallest one bounds the smooth ball
  std::vector<double> breaks;
  double smooth_scale = 1.0;
  for (const KinkSphere& k : field.kinks) {
    double dist = distance(x, k.center);
    double near = std::fabs(dist - k.radius);
    double far = dist + k.radius;
    if (near < 1e-13 * std::max(1.0, dist))
      throw InputError("fraclap_pv: x lies on a declared kink surface of the field");
    breaks.push_back(near);
    if (far > 0.0) breaks.push_back(far);
    smooth_scale = std::min(smooth_scale, near / 4.0);
  }
  std::sort(breaks.begin(), breaks.end());

  const AngularKit kit = make_kit(sp.d, opt);
  const double ux = field(x);
  auto second_diff = [&](double r) {
    double acc = 0.0;
    for (std::size_t i = 0; i < kit.dirs.size(); ++i) {
      Vec step = r * kit.dirs[i];
      acc += kit.wts[i] * (field(x + step) + field(x - step));
    }
    return 0.5 * acc - ux;
  };

  PvResult out;
  const double r_head = opt.head_factor * smooth_scale;

  // head: S(r) ~ s2 r^2 below r_head; Richardson kills the r^4 contamination
  double s2a = second_diff(r_head) / (r_head * r_head);
  double s2b = second_diff(0.5 * r_head) / (0.25 * r_head * r_head);
  double s2 = (4.0 * s2b - s2a) / 3.0;
  double head_weight = std::pow(r_head, 2.0 - alpha) / (2.0 - alpha);
  out.value += front * s2 * head_weight;
  out.error += front * (std::fabs(s2a - s2b) / 3.0) * head_weight;
  // difference-cancellation floor of the head and first panels
  out.error += 2e-16 * (1.0 + std::fabs(ux)) * front * std::pow(r_head, -alpha);

  // truncation radius and the bound on what remains of the non-constant part
  double r_end;
  double tail_bound;
  switch (field.decay) {
    case Decay::CompactSupport: {
      r_end = std::max(distance(x, field.support_center) + field.support_radius, 2.0 * r_head);
      tail_bound = 0.0;
      break;
    }
    case Decay::PowerLaw: {
      double e = field.decay_exponent;
      double coef = front * field.bound * std::pow(2.0, e) / (e + alpha);
      r_end = std::max({2.0 * field.far_radius + 2.0 * x.norm(),
                        std::pow(coef / opt.tail_tol, 1.0 / (e + alpha)), 4.0 * r_head});
      tail_bound = coef * std::pow(r_end, -e - alpha);
      break;
    }
    default: {
      if (field.variation_scale > 0.0) {
        // mean-zero far oscillation: one integration by parts gains a power
        double v = field.variation_scale;
        double coef = 2.0 * front * field.bound * v;
        r_end = std::max({std::pow(coef / opt.tail_tol, 1.0 / (1.0 + alpha)), 8.0 * v,
                          4.0 * r_head});
        tail_bound = coef * std::pow(r_end, -1.0 - alpha);
      } else {
        double coef = front * field.bound / alpha;
        r_end = std::max(std::pow(coef / opt.tail_tol, 1.0 / alpha), 4.0 * r_head);
        tail_bound = coef * std::pow(r_end, -alpha);
      }
    }
  }

  // exact tail of the constant part: int_R^inf -u(x) r^{-1-alpha} dr
  out.value += front * (-ux) * std::pow(r_end, -alpha) / alpha;
  out.error += tail_bound;

  // radial panels: geometric, capped by the oscillation scale, split at kinks
  const double osc_cap = field.variation_scale > 0.0 ? field.variation_scale / 3.0 : kInf;
  std::size_t bi = 0;
  while (bi < breaks.size() && breaks[bi] <= r_head * (1.0 + 1e-12)) ++bi;
  // each panel gets a slice of tail_tol as its absolute error floor,
  // proportional to its share of the total log-width
  const double floor_rate = (opt.tail_tol / front) / std::log(r_end / r_head);
  // any field honoring its declared bound keeps each shell integral below
  // 2 max(bound, |u(x)|) int r^{-1-alpha}; exceeding that proves the
  // descriptor lies about the growth of u
  const double shell_allowance = 2.05 * std::max(field.bound, std::fabs(ux));
  double r = r_head;
  int panels = 0;
  while (r < r_end) {
    double next = std::min({r * 2.0, r + osc_cap, r_end});
    if (bi < breaks.size() && breaks[bi] < next) {
      if (breaks[bi] > r * (1.0 + 1e-12)) next = breaks[bi];
      ++bi;
    }
    double lo = std::log(r), hi = std::log(next);
    QuadResult q = gk_integrate_abs(
        [&](double t) {
          double rr = std::exp(t);
          return second_diff(rr) * std::exp(-alpha * t);
        },
        lo, hi, opt.panel_tol, floor_rate * (hi - lo), 12);
    out.value += front * q.value;
    out.error += front * q.error;

    double cap = shell_allowance * (std::pow(r, -alpha) - std::pow(next, -alpha)) / alpha;
    if (std::fabs(q.value) > cap + 1e-300)
      throw DivergenceError(
          "fraclap_pv: a radial shell contributes more than the declared bound of the "
          "field allows; the field grows faster than its descriptor claims");

    r = next;
    if (++panels > opt.max_panels)
      throw ToleranceError("fraclap_pv: panel budget exhausted before the truncation radius");
  }
  return out;
}

GridField fraclap_fourier(const GridField& grid, const StableParams& sp) {
  if (sp.d != 1) throw InputError("fraclap_fourier: one-dimensional grids only");
  const std::size_t n = grid.values.size();
  if (n < 8) throw InputError("fraclap_fourier: need at least 8 samples");
  if (!(grid.hi > grid.lo)) throw InputError("fraclap_fourier: box is empty");

  GridField out = grid;
  double vmax = 0.0;
  for (double v : grid.values) vmax = std::max(vmax, std::fabs(v));
  if (vmax == 0.0) {
    std::fill(out.values.begin(), out.values.end(), 0.0);
    return out;
  }
  if (std::max(std::fabs(grid.values.front()), std::fabs(grid.values.back())) > 1e-10 * vmax)
    throw ResolutionError("fraclap_fourier: field carries mass at the wrap-around; enlarge the box");

  const std::size_t nc = n / 2 + 1;
  std::vector<double> work(grid.values);
  fftw_complex* spec = fftw_alloc_complex(nc);
  fftw_plan fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), work.data(), spec, FFTW_ESTIMATE);
  fftw_execute(fwd);
  fftw_destroy_plan(fwd);

  // aliasing guard: top eighth of the spectrum against the total (DC excluded)
  double energy = 0.0, tail = 0.0;
  const std::size_t cut = nc - 1 - (nc - 1) / 8;
  for (std::size_t j = 1; j < nc; ++j) {
    double e = spec[j][0] * spec[j][0] + spec[j][1] * spec[j][1];
    energy += e;
    if (j >= cut) tail += e;
  }
  if (energy > 0.0 && tail > 1e-8 * energy) {
    fftw_free(spec);
    throw ResolutionError("fraclap_fourier: spectral tail indicates aliasing; refine the grid");
  }

  const double length = grid.hi - grid.lo;
  for (std::size_t j = 0; j < nc; ++j) {
    double xi = 2.0 * M_PI * static_cast<double>(j) / length;
    double mult = (j == 0 ? 0.0 : -std::pow(xi, sp.alpha)) / static_cast<double>(n);
    spec[j][0] *= mult;
    spec[j][1] *= mult;
  }

  fftw_plan bwd = fftw_plan_dft_c2r_1d(static_cast<int>(n), spec, out.values.data(), FFTW_ESTIMATE);
  fftw_execute(bwd);
  fftw_destroy_plan(bwd);
  fftw_free(spec);
  return out;
}

namespace {

// integral of the integrand over the ray going away from `edge` in direction
// `sgn`. `offset` is the along-ray coordinate of the far edge of the test
// support (negative when the support lies behind the ray); past it
// |lphi(t)| <= c_d ||phi||_1 gap^{-1-alpha} drives the stopping rule.
double ray_integral(const std::function<double(double)>& integrand, double edge, double sgn,
                    double phi_l1, double offset, double alpha, double c_d, double u_bound,
                    double stop_tol) {
  double total = 0.0;
  double s_lo = 0.0, width = 1.0;
  for (int k = 0; k < 300; ++k) {
    double a = edge + sgn * s_lo;
    double b = edge + sgn * (s_lo + width);
    QuadResult q =
        gk_integrate_abs(integrand, std::min(a, b), std::max(a, b), 1e-10, 0.01 * stop_tol, 12);
    total += q.value;
    s_lo += width;
    width *= 2.0;
    double gap = s_lo - offset;
    if (gap > 1.0) {
      double rem = u_bound * c_d * phi_l1 * std::pow(gap, -alpha) / alpha;
      if (rem < stop_tol) return total;
    }
  }
  throw ToleranceError("distributional_pairing: ray quadrature failed to localize");
}

}  // namespace

double distributional_pairing(const PairingSpec& spec, const StableParams& sp,
                              const PvOptions& opt) {
  if (spec.domain.dim() != 1 || sp.d != 1)
    throw InputError("distributional_pairing: implemented for d = 1");
  const ScalarField& phi = spec.test_fn;
  if (phi.dim != 1 || phi.decay != Decay::CompactSupport)
    throw DomainError("distributional_pairing: test function must be compactly supported");
  if (spec.domain.classify(phi.support_center) != Region::Interior ||
      !(spec.domain.boundary_distance(phi.support_center) > phi.support_radius))
    throw DomainError("distributional_pairing: test support must sit strictly inside the domain");
  if (spec.exterior.kind == ExteriorKind::TimeDependent)
    throw InputError("distributional_pairing: the pairing is stationary");
  if (!spec.interior.value) throw InputError("distributional_pairing: interior field missing");

  auto lphi = [&](double t) { return fraclap_pv(phi, sp, Vec(t), opt).value; };
  const double phi_l1 = 2.0 * phi.bound * phi.support_radius;
  const double sc = phi.support_center[0], sr = phi.support_radius;

  // panel breakpoints inside bounded pieces: support edges and interior kinks
  auto bounded_piece = [&](const ScalarField& w, double a, double b) {
    std::vector<double> cuts{a, b};
    for (double e : {sc - sr, sc + sr})
      if (e > a && e < b) cuts.push_back(e);
    for (const KinkSphere& k : w.kinks)
      for (double e : {k.center[0] - k.radius, k.center[0] + k.radius})
        if (e > a && e < b) cuts.push_back(e);
    std::sort(cuts.begin(), cuts.end());
    double scale = (1.0 + w.bound) * (1.0 + phi_l1) * (1.0 + sp.c_d());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (!(cuts[i + 1] > cuts[i])) continue;
      total += gk_integrate_abs([&](double t) { return w.value(Vec(t)) * lphi(t); }, cuts[i],
                                cuts[i + 1], 1e-10, 1e-13 * scale, 12)
                   .value;
    }
    return total;
  };

  auto ray_piece = [&](const ScalarField& w, double edge, double sgn) {
    if (w.decay == Decay::CompactSupport) {
      // clip the ray to the support of w
      double lo = w.support_center[0] - w.support_radius;
      double hi = w.support_center[0] + w.support_radius;
      double a = sgn > 0 ? std::max(edge, lo) : lo;
      double b = sgn > 0 ? hi : std::min(edge, hi);
      if (!(b > a)) return 0.0;
      return bounded_piece(w, a, b);
    }
    double offset = sgn > 0 ? (sc + sr) - edge : edge - (sc - sr);
    return ray_integral([&](double t) { return w.value(Vec(t)) * lphi(t); }, edge, sgn, phi_l1,
                        offset, sp.alpha, sp.c_d(), w.bound, 1e-11);
  };

  // integrate w * lphi over a region made of at most two pieces
  auto over_region = [&](const ScalarField& w, const Domain& region) {
    if (!w.value) throw InputError("distributional_pairing: region field missing");
    switch (region.kind()) {
      case DomainKind::HalfSpace:
        return ray_piece(w, 0.0, region.orientation() > 0 ? 1.0 : -1.0);
      case DomainKind::Ball:
        return bounded_piece(w, region.center()[0] - region.radius(),
                             region.center()[0] + region.radius());
      default:
        return ray_piece(w, region.center()[0] - region.radius(), -1.0) +
               ray_piece(w, region.center()[0] + region.radius(), 1.0);
    }
  };

  double inner = over_region(spec.interior, spec.domain);
  double outer;
  if (spec.exterior.kind == ExteriorKind::PointMass) {
    if (spec.domain.classify(spec.exterior.atom_location) != Region::Exterior)
      throw DomainError("distributional_pairing: point mass must sit in the open exterior");
    outer = spec.exterior.atom_weight * lphi(spec.exterior.atom_location[0]);
  } else {
    outer = over_region(spec.exterior.field, spec.domain.complement());
  }
  return inner + outer;
}

}  // namespace fracdir
