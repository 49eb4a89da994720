#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "fracdir/fields.hpp"
#include "fracdir/geometry.hpp"

namespace fracdir {

// Parameters of the weighted norms. The measure on the region is
// d_x^{theta-d} (1+d_x)^sigma dx, where d_x is the distance to the boundary
// shared by the region and its complement; n is the number of derivative
// orders entering the norm.
struct WeightSpec {
  double p = 2.0;
  double theta = 0.0;
  double sigma = 0.0;
  int n = 0;
};

// Quadrature knobs for the shell sweeps behind the norms. Shells are dyadic
// in boundary distance; the sweep stops once shells fall below shell_rel_tol
// of the running total, extrapolates a geometric tail past the octave budget,
// and declares divergence when shells stop decaying.
struct NormOptions {
  double shell_rel_tol = 1e-13;
  double panel_tol = 1e-11;
  int max_octaves_in = 40;    // toward the boundary
  int max_octaves_out = 160;  // toward infinity (unbounded regions)
  double divergence_ratio = 0.97;
  int angular_points = 32;  // starting resolution of the d = 2 angular rule
};

struct NormTerm {
  int order = 0;       // derivative order
  double value = 0.0;  // (integral of this order's contributions)^{1/p}
  double error = 0.0;
};

struct NormResult {
  double value = 0.0;
  double error = 0.0;
  std::vector<NormTerm> terms;
};

void to_json(nlohmann::json& j, const NormResult& r);

// L_p norm of the field against the weighted measure. Dimension 1 covers all
// region kinds; dimension 2 covers the ball and its complement by a radial
// sweep with an adaptive angular rule. Field kink markers split quadrature
// panels in dimension 1, so indicators and other non-smooth fields integrate
// at full accuracy.
NormResult weighted_lp_norm(const ScalarField& u, const Domain& region, const WeightSpec& spec,
                            const NormOptions& opt = {});

// Sum over derivative orders k <= spec.n of the weighted L_p norm of
// d_x^k D^k u, one term per order (orders in dimension 2 sum their component
// multi-indices inside the term). Uses the field's gradient when present and
// central differences with step d_x/8 otherwise, so stencils never cross the
// boundary. Orders up to 2 in dimension 1 and up to 1 in dimension 2.
NormResult weighted_sobolev_norm(const ScalarField& u, const Domain& region,
                                 const WeightSpec& spec, const NormOptions& opt = {});

struct DyadicShell {
  int index = 0;             // shell covers boundary distances near e^{index}
  double contribution = 0.0; // e^{n theta} (1+e^n)^sigma ||zeta_{-n}(e^n.) u(e^n.)||^p
};

struct DyadicNormResult {
  double value = 0.0;
  double error = 0.0;
  std::vector<DyadicShell> shells;  // nonzero shells, ascending index
};

void to_json(nlohmann::json& j, const DyadicNormResult& r);

// Localize-and-rescale norm: value^p sums, over shell indices n, the weight
// e^{n theta} (1+e^n)^sigma times the unweighted Sobolev norm^p of
// zeta_{-n}(e^n y) u(e^n y). Smoothness spec.n in {0, 1}, dimension 1. The
// sum is truncated once shells drop below 1e-12 of the running total on both
// ends; shells that stop decaying raise DivergenceError.
DyadicNormResult dyadic_norm(const ScalarField& u, const Domain& region, const WeightSpec& spec,
                             const PartitionFamily& partition = PartitionFamily(),
                             const NormOptions& opt = {});

// Dyadic norm of the point mass w * delta at the given location: only shells
// whose cutoff covers the atom contribute, each exactly
// e^{n theta} (1+e^n)^sigma zeta_{-n}(location)^p e^{-n d p}. The shell- and
// location-independent factor (the unweighted norm of a unit point mass) is
// normalized to 1, so values compare within a family sharing the convention,
// not across different norms.
DyadicNormResult point_mass_dyadic_norm(const Vec& location, double weight, const Domain& region,
                                        const WeightSpec& spec,
                                        const PartitionFamily& partition = PartitionFamily());

// Weighted sup and difference-quotient quantities tracked on samples.
struct HolderSpec {
  int k = 0;              // derivative order of the tracked quantity
  double delta = 0.5;     // quotient exponent, in (0, 1)
  double exponent = 0.0;  // weight power a: the sup tracks psi^{k+a} D^k u
};

struct HolderResult {
  double sup_term = 0.0;       // max over samples of |psi^{k+a} D^k u|
  double seminorm_term = 0.0;  // max quotient |W(x)-W(y)| / |x-y|^delta of
                               // W = psi^{k+delta+a} D^k u
  double ladder_slope = 0.0;   // log-log trend of the sup quantity vs d_x
  double ladder_ci = 0.0;      // 95% half-width of the trend
  std::size_t samples = 0;
};

void to_json(nlohmann::json& j, const HolderResult& r);

// Samples the weighted quantities on a deterministic log ladder in boundary
// distance (1e-1 down to 1e-6 on every boundary ray, plus interior points and
// seeded log-uniform fill-in). The suprema are lower bounds that grow with
// the sample; a positive value with negative ladder slope beyond the trend CI
// is the operational signature of an unbounded quantity. Dimension 1.
HolderResult weighted_holder(const ScalarField& u, const Domain& region, const HolderSpec& hs,
                             const RegularizedDistance& rd, int extra_samples = 64,
                             std::uint64_t seed = 1);

}  // namespace fracdir
