#pragma once

// Limit objects for the scaled spectral norm: Frechet-type bound laws, the
// Poisson arrival sequence Gamma_i and the limiting point-process order
// statistics.

#include <cstdint>
#include <utility>
#include <vector>

#include "hrmlab/linear_filter.hpp"

namespace hrmlab {

/// Scale constants of the two bounding Frechet laws.
struct BoundConstants {
  /// max_k theta_k^2 * sum_j c_j^2
  double lower_scale = 1.0;
  /// max_l |theta_l| * sum_k |theta_k| * sum_j c_j^2
  double upper_scale = 1.0;
  double alpha = 1.0;
};

BoundConstants bound_constants(const FilterSpec& spec, double alpha);

/// P(Gamma_1^{-2/alpha} * scale <= x) = exp(-(x / scale)^{-alpha/2}).
double frechet_cdf(double x, double scale, double alpha);

/// Inverse of frechet_cdf in x for a level in (0, 1).
double frechet_quantile(double level, double scale, double alpha);

/// The smaller bounding CDF, driven by upper_scale.
double bound_cdf_lower(double x, const BoundConstants& b);

/// The larger bounding CDF, driven by lower_scale.
double bound_cdf_upper(double x, const BoundConstants& b);

/// Arrival times Gamma_1 < Gamma_2 < ... of a unit-rate Poisson process.
struct GammaSeq {
  std::vector<double> values;
  std::uint64_t seed = 0;
};

/// Partial sums of k iid unit exponentials, keyed by seed.
GammaSeq sample_gamma(std::size_t k, std::uint64_t seed);

/// The k largest points of sum_i sum_l delta_{Gamma_i^{-2/alpha} theta_l sum_j c_j^2},
/// in decreasing order, for one realization of (Gamma_i).
std::vector<double> limit_order_statistics(const FilterSpec& spec, double alpha, std::size_t k,
                                           std::uint64_t seed);

/// Scale constants (max{1, theta^2}, max{1 + |theta|, |theta| + theta^2}) of
/// the MA(1) row filter xi = Z_i + theta Z_{i-1}.
std::pair<double, double> ma1_constants(double theta);

}  // namespace hrmlab
