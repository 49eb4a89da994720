#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "fracdir/quad.hpp"

namespace testutil {

// Piecewise cumulative integral of a 1-d density over a fixed grid, evaluated
// by panel quadrature and linearly interpolated. Intended as a reference CDF
// for Kolmogorov-Smirnov tests; grids should be fine near mass concentrations.
struct TabulatedCdf {
  std::vector<double> z;
  std::vector<double> F;

  static TabulatedCdf from_density(const std::function<double(double)>& f,
                                   const std::vector<double>& grid) {
    TabulatedCdf t;
    t.z = grid;
    t.F.resize(grid.size(), 0.0);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      t.F[i + 1] = t.F[i] + fracdir::gk_integrate(f, grid[i], grid[i + 1], 1e-9, 10).value;
    }
    return t;
  }

  double total() const { return F.empty() ? 0.0 : F.back(); }

  double operator()(double x) const {
    if (x <= z.front()) return 0.0;
    if (x >= z.back()) return F.back();
    auto it = std::upper_bound(z.begin(), z.end(), x);
    std::size_t i = static_cast<std::size_t>(it - z.begin()) - 1;
    double w = (x - z[i]) / (z[i + 1] - z[i]);
    return F[i] + w * (F[i + 1] - F[i]);
  }
};

// log-spaced grid from lo to hi plus the exact endpoints
inline std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
  return g;
}

}  // namespace testutil
