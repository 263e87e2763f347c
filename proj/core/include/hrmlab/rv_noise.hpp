#pragma once

// Regularly varying noise: samplers, exact tail functionals and norming
// constants.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace hrmlab {

/// Half-open logical index interval [begin, end).
struct IndexRange {
  std::int64_t begin = 0;
  std::int64_t end = 0;

  [[nodiscard]] std::int64_t size() const { return end - begin; }
  [[nodiscard]] bool empty() const { return end <= begin; }
  [[nodiscard]] bool contains(std::int64_t i) const { return i >= begin && i < end; }
  [[nodiscard]] bool contains(const IndexRange& other) const {
    return other.begin >= begin && other.end <= end;
  }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

std::string to_string(const IndexRange& range);

enum class TailFamily { pareto_symmetric, pareto_positive, pareto_skewed, student_t };

std::string_view to_string(TailFamily family);
TailFamily tail_family_from_string(std::string_view name);

/// A regularly varying law for the iid noise Z.
///
/// Pareto families: |Z| = scale * U^{-1/alpha}, positive with probability q.
/// student_t: Z = scale * T where T is Student-t with alpha degrees of freedom.
/// With `centered` set the law is shifted by its mean (requires alpha > 1).
struct TailModel {
  TailFamily family = TailFamily::pareto_symmetric;
  double alpha = 1.5;
  double q = 0.5;
  double scale = 1.0;
  bool centered = false;

  static TailModel pareto_symmetric(double alpha, double scale = 1.0);
  static TailModel pareto_positive(double alpha, double scale = 1.0);
  static TailModel pareto_skewed(double alpha, double q, double scale = 1.0);
  static TailModel student_t(double alpha, double scale = 1.0);

  /// Throws std::invalid_argument when the parameters are inconsistent.
  void validate() const;

  /// Mean of the uncentered law; nullopt when alpha <= 1 and the law is not
  /// symmetric (the mean does not exist).
  [[nodiscard]] std::optional<double> raw_mean() const;

  /// True when E Z = 0 holds for the model as sampled.
  [[nodiscard]] bool has_zero_mean() const;

  friend bool operator==(const TailModel&, const TailModel&) = default;
};

void to_json(nlohmann::json& j, const TailModel& model);
void from_json(const nlohmann::json& j, TailModel& model);

/// Row-major-agnostic matrix with logical index offsets.
struct OffsetMatrix {
  Eigen::MatrixXd values;
  std::int64_t row_offset = 0;
  std::int64_t col_offset = 0;

  [[nodiscard]] IndexRange rows() const { return {row_offset, row_offset + values.rows()}; }
  [[nodiscard]] IndexRange cols() const { return {col_offset, col_offset + values.cols()}; }

  /// Logical access; throws std::out_of_range outside the stored rectangle.
  [[nodiscard]] double at(std::int64_t i, std::int64_t t) const;
};

/// iid noise on a logical index rectangle, with the seed that produced it.
struct NoisePanel {
  OffsetMatrix data;
  std::uint64_t seed = 0;

  [[nodiscard]] IndexRange rows() const { return data.rows(); }
  [[nodiscard]] IndexRange cols() const { return data.cols(); }
  [[nodiscard]] double at(std::int64_t i, std::int64_t t) const { return data.at(i, t); }
};

/// Draw for logical entry (i, t). Depends only on (model, seed, i, t).
double draw_noise(const TailModel& model, std::uint64_t seed, std::int64_t i, std::int64_t t);

NoisePanel sample_noise(const TailModel& model, IndexRange rows, IndexRange cols, std::uint64_t seed);

/// P(|Z| > x) for the model as sampled (including any centering shift).
double tail_probability(const TailModel& model, double x);

/// P(Z > x) for the model as sampled.
double right_tail_probability(const TailModel& model, double x);

/// Solution a of m * P(|Z| > a) = 1.
double norming_constant(const TailModel& model, double m);

/// E(Z^2 1{Z^2 <= cutoff^2}).
double truncated_second_moment(const TailModel& model, double cutoff);

/// E(Z^2), or nullopt when it is infinite.
std::optional<double> second_moment(const TailModel& model);

}  // namespace hrmlab
