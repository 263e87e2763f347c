#pragma once

#include <vector>

#include <Eigen/Dense>

namespace hrmlab {

/// Row-banded matrix: row r stores `width` entries starting at column
/// first_col(r). Entries outside the band are structurally zero.
class BandedMatrix {
 public:
  using Index = Eigen::Index;

  BandedMatrix() = default;
  BandedMatrix(Index rows, Index cols, Index width, std::vector<Index> first_col, std::vector<double> values);

  /// Tightest row band holding every nonzero of `dense`.
  static BandedMatrix from_dense(const Eigen::MatrixXd& dense);

  [[nodiscard]] Index rows() const { return rows_; }
  [[nodiscard]] Index cols() const { return cols_; }
  [[nodiscard]] Index width() const { return width_; }
  [[nodiscard]] Index first_col(Index r) const { return first_col_[static_cast<std::size_t>(r)]; }

  /// Band entry `k` of row `r` (column first_col(r) + k).
  [[nodiscard]] double band(Index r, Index k) const { return values_[static_cast<std::size_t>(r * width_ + k)]; }

  [[nodiscard]] double at(Index r, Index c) const;
  [[nodiscard]] Eigen::MatrixXd to_dense() const;

  /// y = A x
  [[nodiscard]] Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
  /// y = A^T x
  [[nodiscard]] Eigen::VectorXd multiply_transpose(const Eigen::VectorXd& x) const;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  Index width_ = 0;
  std::vector<Index> first_col_;
  std::vector<double> values_;
};

}  // namespace hrmlab
