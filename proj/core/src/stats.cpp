#include "fracdir/stats.hpp"

#include <algorithm>
#include <cmath>

#include "fracdir/error.hpp"

namespace fracdir {

void MeanAccumulator::merge(const MeanAccumulator& o) {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  double n1 = static_cast<double>(n_);
  double n2 = static_cast<double>(o.n_);
  double d = o.mean_ - mean_;
  double nt = n1 + n2;
  mean_ += d * n2 / nt;
  m2_ += o.m2_ + d * d * n1 * n2 / nt;
  n_ += o.n_;
}

double MeanAccumulator::variance() const {
  if (n_ < 2) return 0.0;
  return m2_ / static_cast<double>(n_ - 1);
}

double MeanAccumulator::stderror() const {
  if (n_ < 2) return 0.0;
  return std::sqrt(variance() / static_cast<double>(n_));
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& w) {
  if (x.size() != y.size() || x.size() < 2)
    throw InputError("fit_line: need matching x/y with at least 2 points");
  if (!w.empty() && w.size() != x.size())
    throw InputError("fit_line: weight vector size mismatch");

  const std::size_t n = x.size();
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double wi = w.empty() ? 1.0 : w[i];
    if (!(wi >= 0)) throw InputError("fit_line: weights must be nonnegative");
    sw += wi;
    sx += wi * x[i];
    sy += wi * y[i];
    sxx += wi * x[i] * x[i];
    sxy += wi * x[i] * y[i];
  }
  double det = sw * sxx - sx * sx;
  if (!(std::fabs(det) > 0))
    throw InputError("fit_line: degenerate abscissa (all x equal?)");

  LineFit f;
  f.n = n;
  f.slope = (sw * sxy - sx * sy) / det;
  f.intercept = (sy - f.slope * sx) / sw;

  // Residual-based slope uncertainty; weights are treated as relative.
  double rss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double wi = w.empty() ? 1.0 : w[i];
    double r = y[i] - (f.intercept + f.slope * x[i]);
    rss += wi * r * r;
  }
  if (n > 2) {
    double s2 = rss / static_cast<double>(n - 2);
    f.slope_stderr = std::sqrt(std::max(0.0, s2 * sw / det));
  }
  f.slope_ci = 1.96 * f.slope_stderr;
  return f;
}

double kolmogorov_q(double lambda) {
  if (lambda < 1e-8) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.size() < 8) throw StatisticalError("ks_test: sample too small");
  std::sort(sample.begin(), sample.end());
  const std::size_t n = sample.size();
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double f = cdf(sample[i]);
    double lo = static_cast<double>(i) / static_cast<double>(n);
    double hi = static_cast<double>(i + 1) / static_cast<double>(n);
    d = std::max(d, std::max(std::fabs(f - lo), std::fabs(hi - f)));
  }
  KsResult r;
  r.statistic = d;
  r.n = n;
  double sn = std::sqrt(static_cast<double>(n));
  r.p_value = kolmogorov_q(d * (sn + 0.12 + 0.11 / sn));
  return r;
}

} // namespace fracdir
