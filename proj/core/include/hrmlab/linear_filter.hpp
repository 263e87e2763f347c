#pragma once

// Finite-window coefficient sequences and the two-dimensional linear filter
// Z -> xi -> X-hat.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "hrmlab/rv_noise.hpp"

namespace hrmlab {

/// Real sequence supported on lags [min_lag, min_lag + size).
class CoefficientSequence {
 public:
  CoefficientSequence() = default;
  CoefficientSequence(std::vector<double> values, std::int64_t min_lag = 0, std::string name = {});

  /// Single nonzero coefficient at `lag`.
  static CoefficientSequence spike(double value = 1.0, std::int64_t lag = 0, std::string name = {});

  [[nodiscard]] const std::vector<double>& values() const { return values_; }
  [[nodiscard]] std::int64_t min_lag() const { return min_lag_; }
  [[nodiscard]] std::int64_t max_lag() const { return min_lag_ + static_cast<std::int64_t>(values_.size()) - 1; }
  [[nodiscard]] std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
  [[nodiscard]] const std::string& name() const { return name_; }

  /// Coefficient at `lag`; zero outside the window.
  [[nodiscard]] double at(std::int64_t lag) const;

  [[nodiscard]] double abs_sum() const { return abs_sum_; }
  [[nodiscard]] double sq_sum() const { return sq_sum_; }
  [[nodiscard]] double max_abs() const;
  [[nodiscard]] double max_square() const;
  [[nodiscard]] int nonzero_count() const;

  /// Copy with every coefficient multiplied by `factor` (must be nonzero).
  [[nodiscard]] CoefficientSequence scaled(double factor) const;

  friend bool operator==(const CoefficientSequence& a, const CoefficientSequence& b) {
    return a.min_lag_ == b.min_lag_ && a.values_ == b.values_;
  }

 private:
  std::vector<double> values_{1.0};
  std::int64_t min_lag_ = 0;
  std::string name_;
  double abs_sum_ = 1.0;
  double sq_sum_ = 1.0;
};

void to_json(nlohmann::json& j, const CoefficientSequence& seq);
void from_json(const nlohmann::json& j, CoefficientSequence& seq);

/// Factorized filter coefficients c (time lags j) and theta (row lags k),
/// with the summability exponent delta.
struct FilterSpec {
  CoefficientSequence c;
  CoefficientSequence theta;
  double delta = 0.5;

  /// True when exactly one theta_k is nonzero.
  [[nodiscard]] bool single_spike() const { return theta.nonzero_count() == 1; }
};

void to_json(nlohmann::json& j, const FilterSpec& spec);
void from_json(const nlohmann::json& j, FilterSpec& spec);

/// sum_k |v_k|^delta over the window.
double delta_norm(const CoefficientSequence& seq, double delta);

/// A one-sided infinite coefficient family on lags 0, 1, 2, ... together with
/// a bound on its absolute tail sums.
struct CoefficientFamily {
  std::string name;
  std::function<double(std::int64_t)> coefficient;
  /// Upper bound on sum_{j >= lag} |coefficient(j)|; +inf if not summable.
  std::function<double(std::int64_t)> tail_bound;

  /// c_j = ratio^j.
  static CoefficientFamily geometric(double ratio);
  /// c_j = (1 + j)^{-power}.
  static CoefficientFamily polynomial(double power);
};

/// Finite-window surrogate of an infinite family.
struct TruncatedSequence {
  CoefficientSequence sequence;
  /// Bound on the absolute sum of the dropped coefficients (below epsilon).
  double dropped_bound = 0.0;
};

/// Smallest window 0..L with tail_bound(L + 1) < epsilon.
TruncatedSequence truncate_family(const CoefficientFamily& family, double epsilon);

/// xi_{it} = sum_k theta_k Z_{i-k,t} over the logical rectangle rows x cols.
OffsetMatrix build_xi(const NoisePanel& noise, const CoefficientSequence& theta, IndexRange rows, IndexRange cols);

/// X_{it} = sum_j c_j Z_{i,t-j} for i in rows, t = 1..n.
OffsetMatrix build_row_process(const NoisePanel& noise, const CoefficientSequence& c, IndexRange rows,
                               std::int64_t n);

/// X-hat_{it} = sum_j c_j xi_{i,t-j} for i = 1..p, t = 1..n (two-stage filter).
Eigen::MatrixXd build_xhat(const NoisePanel& noise, const FilterSpec& spec, std::int64_t p, std::int64_t n);

/// Logical noise rectangle required by build_xhat, and row range of the
/// underlying row process X_{i-k,t}.
IndexRange xhat_noise_rows(const FilterSpec& spec, std::int64_t p);
IndexRange xhat_noise_cols(const FilterSpec& spec, std::int64_t n);
IndexRange row_process_rows(const FilterSpec& spec, std::int64_t p);

}  // namespace hrmlab
