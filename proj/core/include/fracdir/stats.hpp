#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace fracdir {

// Streaming mean/variance (Welford). Merge order must be fixed by the caller
// when combining parallel blocks, so that reductions are deterministic.
class MeanAccumulator {
public:
  void add(double x) {
    ++n_;
    double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }
  void merge(const MeanAccumulator& o);

  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const; // unbiased
  double stderror() const; // stderr of the mean

private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;  // from weighted residuals
  double slope_ci = 0.0;      // 95% half-width
  std::size_t n = 0;
};

// Weighted least squares y ~ a + b*x. Weights default to 1; they are inverse
// variances, not standard deviations.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& w = {});

// Kolmogorov-Smirnov distance of a sample against a continuous CDF, plus the
// asymptotic p-value (Kolmogorov distribution with the finite-n correction).
struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
  std::size_t n = 0;
};

KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf);

// Survival function of the Kolmogorov distribution, Q(lambda).
double kolmogorov_q(double lambda);

} // namespace fracdir
