#pragma once

#include <functional>
#include <span>
#include <vector>

namespace hrmlab {

/// Fraction of values <= x. Throws on empty input.
double ecdf(std::span<const double> values, double x);

/// sup_x |ECDF(x) - cdf(x)|, evaluated on both sides of every sample point.
double ks_distance(std::span<const double> values, const std::function<double(double)>& cdf);

/// Linear-interpolation sample quantile (R type 7). Throws on empty input.
double quantile(std::span<const double> values, double level);

struct Spread {
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  [[nodiscard]] double iqr() const { return q75 - q25; }
};

Spread spread(std::span<const double> values);

/// Binomial standard error sqrt(prob (1 - prob) / count).
double binomial_stderr(double prob, std::size_t count);

}  // namespace hrmlab
