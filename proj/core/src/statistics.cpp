#include "hrmlab/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hrmlab {

double ecdf(std::span<const double> values, double x) {
  if (values.empty()) throw std::invalid_argument("ecdf of an empty sample");
  const auto below = std::count_if(values.begin(), values.end(), [x](double v) { return v <= x; });
  return static_cast<double>(below) / static_cast<double>(values.size());
}

double ks_distance(std::span<const double> values, const std::function<double(double)>& cdf) {
  if (values.empty()) throw std::invalid_argument("ks_distance of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double count = static_cast<double>(sorted.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    worst = std::max({worst, static_cast<double>(i + 1) / count - f, f - static_cast<double>(i) / count});
  }
  return worst;
}

double quantile(std::span<const double> values, double level) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
  if (!(level >= 0.0 && level <= 1.0)) throw std::invalid_argument("quantile level must lie in [0, 1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = level * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Spread spread(std::span<const double> values) {
  return {quantile(values, 0.5), quantile(values, 0.25), quantile(values, 0.75)};
}

double binomial_stderr(double prob, std::size_t count) {
  if (count == 0) throw std::invalid_argument("binomial_stderr needs a positive count");
  return std::sqrt(std::max(prob * (1.0 - prob), 0.0) / static_cast<double>(count));
}

}  // namespace hrmlab
