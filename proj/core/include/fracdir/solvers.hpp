#pragma once

#include <cstddef>

#include "fracdir/fields.hpp"
#include "fracdir/geometry.hpp"
#include "fracdir/kernels.hpp"
#include "fracdir/stochastic.hpp"

namespace fracdir {

// Knobs for the deterministic evaluation routes. tol is the absolute accuracy
// target of one point evaluation; boundary_cut (relative to the domain scale)
// is where the dyadic sweep toward the boundary stops and hands over to the
// local power-law remainder; singularity_cut plays the same role around the
// field point of the green potential.
struct QuadratureOptions {
  double tol = 1e-9;
  double boundary_cut = 1e-8;
  double singularity_cut = 1e-12;
  int max_octaves = 240;
};

// Harmonic extension of the exterior datum: integral over the complement of
// the exit kernel against g, evaluated at an interior point x. Closed-form
// data is integrated over dyadic shells of the boundary distance d_z, with the
// strip below boundary_cut restored through the local d_z^{-alpha/2} power law
// of the kernel; a point mass is exact (kernel value times weight). Domains:
// ball and half-space. Closed-form quadrature is one-dimensional; point
// masses work in any dimension.
//
// Errors: InputError for an unsupported domain kind, dimension, or datum
// kind; DomainError when x is not interior or the atom is not strictly
// exterior; ToleranceError when the dyadic sweep exhausts max_octaves.
double solve_elliptic_kernel(const Domain& domain, const StableParams& sp,
                             const ExteriorData& g, const Vec& x,
                             const QuadratureOptions& opt = {});

// Green potential over the ball: integral of the Dirichlet Green function
// against the forcing f. Solves generator(u) = -f with zero exterior values,
// so the full Dirichlet solution with forcing f is the harmonic extension
// minus this potential. The integrable singularity at y = x and the vanishing
// at the boundary are both captured by log-spaced panels flanked with local
// power-law fits. One-dimensional. Returns 0 when x is not interior.
double green_potential_ball(const Domain& ball, const StableParams& sp,
                            const ScalarField& f, const Vec& x,
                            const QuadratureOptions& opt = {});

// Monte Carlo estimate with its sampling error. Paths that hit the step
// budget before resolving are dropped from the average and counted; a
// censored share above one per mille marks the value unreliable.
struct McValue {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t paths = 0;     // paths entering the average
  std::size_t censored = 0;  // paths dropped at the step budget
  double censored_fraction() const {
    std::size_t n = paths + censored;
    return n == 0 ? 0.0 : static_cast<double>(censored) / static_cast<double>(n);
  }
  bool reliable() const { return censored_fraction() <= 1e-3; }
};

// Probabilistic counterpart of solve_elliptic_kernel: the mean of g at the
// exit position of walk-on-spheres paths started at x. The datum must be
// closed form (an atom has probability zero of being hit). Any dimension.
McValue solve_elliptic_mc(const Domain& domain, const StableParams& sp,
                          const ExteriorData& g, const Vec& x, const McConfig& mc);

// Same with a forcing term: adds the killed-path estimate of the running
// integral of f up to the exit time, so the estimate targets the full
// Dirichlet solution (harmonic extension minus green potential). The time
// integral uses the left endpoint of each step of size dt and carries an
// O(dt) bias; the walk-on-spheres part is unbiased. The two parts run on
// independent path sets and their errors add in quadrature.
McValue solve_elliptic_mc(const Domain& domain, const StableParams& sp,
                          const ExteriorData& g, const ScalarField& f, const Vec& x,
                          const McConfig& mc);

// Parabolic problem with zero initial data inside: u(t, x) is the mean of
// g(t - tau, X_tau) over killed paths that exit before the horizon t; paths
// alive at the horizon contribute zero. The exit time is resolved to the step
// dt, so the value carries an O(dt) bias; refine dt (Richardson) to remove
// it. Closed-form data is read as time-independent.
McValue solve_parabolic_mc(const Domain& domain, const StableParams& sp,
                           const ExteriorData& g, double t, const Vec& x,
                           const McConfig& mc);

enum class Provenance { KernelQuadrature, WalkOnSpheres, KilledPath };

// Stable lowercase names for reports and CSV columns.
const char* provenance_name(Provenance p);

struct SolutionValue {
  double value = 0.0;
  // Quadrature error bound, or one standard error for Monte Carlo routes.
  double error = 0.0;
  Provenance provenance = Provenance::KernelQuadrature;
  bool reliable = true;  // false once censored paths exceed one per mille
};

// A solution of the Dirichlet problem packaged as an evaluable field. The
// problem (domain, order, exterior datum, optional forcing, optional time
// horizon) is fixed at construction together with the evaluation route;
// operator() dispatches on the region of the query point. Exterior points
// return the datum exactly with zero error; interior points run the chosen
// solver; boundary points are refused (DomainError). Monte Carlo routes
// reuse the configured seed at every point, so a fixed field evaluates
// deterministically.
class SolutionField {
public:
  static SolutionField elliptic_quadrature(const Domain& domain, const StableParams& sp,
                                           const ExteriorData& g,
                                           const QuadratureOptions& opt = {});
  static SolutionField elliptic_quadrature(const Domain& domain, const StableParams& sp,
                                           const ExteriorData& g, const ScalarField& f,
                                           const QuadratureOptions& opt = {});
  static SolutionField elliptic_monte_carlo(const Domain& domain, const StableParams& sp,
                                            const ExteriorData& g, const McConfig& mc);
  static SolutionField elliptic_monte_carlo(const Domain& domain, const StableParams& sp,
                                            const ExteriorData& g, const ScalarField& f,
                                            const McConfig& mc);
  static SolutionField parabolic_monte_carlo(const Domain& domain, const StableParams& sp,
                                             const ExteriorData& g, double t,
                                             const McConfig& mc);

  SolutionValue operator()(const Vec& x) const;

  const Domain& domain() const { return domain_; }
  const StableParams& params() const { return params_; }
  const ExteriorData& exterior() const { return exterior_; }
  bool has_forcing() const { return static_cast<bool>(forcing_.value); }
  bool parabolic() const { return parabolic_; }
  double time() const { return time_; }
  Provenance provenance() const { return provenance_; }

private:
  SolutionField() = default;

  Domain domain_;
  StableParams params_{1, 1.0};
  ExteriorData exterior_;
  ScalarField forcing_{};  // empty evaluator means no forcing
  bool parabolic_ = false;
  double time_ = 0.0;
  Provenance provenance_ = Provenance::KernelQuadrature;
  QuadratureOptions quad_{};
  McConfig mc_{};
};

}  // namespace fracdir
