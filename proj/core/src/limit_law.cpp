#include "hrmlab/limit_law.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "hrmlab/rng.hpp"

namespace hrmlab {

namespace {

double unit_exponential(std::uint64_t seed, std::size_t index) {
  const auto u = rng::uniform_pair(seed, rng::Stream::gamma, static_cast<std::uint32_t>(index),
                                   static_cast<std::uint32_t>(index >> 32));
  return -std::log(u.first);
}

}  // namespace

BoundConstants bound_constants(const FilterSpec& spec, double alpha) {
  const double c2 = spec.c.sq_sum();
  return {spec.theta.max_square() * c2, spec.theta.max_abs() * spec.theta.abs_sum() * c2, alpha};
}

double frechet_cdf(double x, double scale, double alpha) {
  if (!(scale > 0.0) || !(alpha > 0.0)) throw std::invalid_argument("frechet_cdf: scale and alpha must be positive");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return std::exp(-std::pow(x / scale, -alpha / 2.0));
}

double frechet_quantile(double level, double scale, double alpha) {
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("frechet_quantile: level must lie in (0, 1)");
  return scale * std::pow(-std::log(level), -2.0 / alpha);
}

double bound_cdf_lower(double x, const BoundConstants& b) { return frechet_cdf(x, b.upper_scale, b.alpha); }

double bound_cdf_upper(double x, const BoundConstants& b) { return frechet_cdf(x, b.lower_scale, b.alpha); }

GammaSeq sample_gamma(std::size_t k, std::uint64_t seed) {
  GammaSeq out;
  out.seed = seed;
  out.values.reserve(k);
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sum += unit_exponential(seed, i);
    out.values.push_back(sum);
  }
  return out;
}

std::vector<double> limit_order_statistics(const FilterSpec& spec, double alpha, std::size_t k,
                                           std::uint64_t seed) {
  if (k == 0) return {};
  if (!(alpha > 0.0)) throw std::invalid_argument("limit_order_statistics: alpha must be positive");
  double max_positive = 0.0;
  for (double v : spec.theta.values()) max_positive = std::max(max_positive, v);
  if (max_positive <= 0.0) {
    throw std::invalid_argument("limit_order_statistics: theta has no positive coefficient");
  }
  const double c2 = spec.c.sq_sum();
  const double exponent = -2.0 / alpha;

  // Min-heap of the k largest points seen so far.
  std::vector<double> top;
  top.reserve(k + spec.theta.values().size());
  double gamma = 0.0;
  for (std::size_t i = 0;; ++i) {
    gamma += unit_exponential(seed, i);
    const double base = std::pow(gamma, exponent) * c2;
    if (top.size() == k && base * max_positive < top.front()) break;
    for (double theta : spec.theta.values()) {
      const double point = base * theta;
      if (top.size() < k) {
        top.push_back(point);
        std::push_heap(top.begin(), top.end(), std::greater<>());
      } else if (point > top.front()) {
        std::pop_heap(top.begin(), top.end(), std::greater<>());
        top.back() = point;
        std::push_heap(top.begin(), top.end(), std::greater<>());
      }
    }
  }
  std::sort(top.begin(), top.end(), std::greater<>());
  return top;
}

std::pair<double, double> ma1_constants(double theta) {
  const double a = std::abs(theta);
  const double t2 = theta * theta;
  return {std::max(1.0, t2), std::max(1.0 + a, a + t2)};
}

}  // namespace hrmlab
