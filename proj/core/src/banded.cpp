#include "hrmlab/banded.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace hrmlab {

BandedMatrix::BandedMatrix(Index rows, Index cols, Index width, std::vector<Index> first_col,
                           std::vector<double> values)
    : rows_(rows), cols_(cols), width_(width), first_col_(std::move(first_col)), values_(std::move(values)) {
  if (rows < 0 || cols < 0 || width < 0 || width > cols) throw std::invalid_argument("invalid band shape");
  if (static_cast<Index>(first_col_.size()) != rows || static_cast<Index>(values_.size()) != rows * width) {
    throw std::invalid_argument("band storage does not match the shape");
  }
  for (Index fc : first_col_) {
    if (fc < 0 || fc + width > cols) throw std::invalid_argument("band row runs outside the matrix");
  }
}

BandedMatrix BandedMatrix::from_dense(const Eigen::MatrixXd& dense) {
  const Index rows = dense.rows();
  const Index cols = dense.cols();
  std::vector<Index> lo(static_cast<std::size_t>(rows), 0);
  Index width = 0;
  for (Index r = 0; r < rows; ++r) {
    Index first = -1, last = -1;
    for (Index c = 0; c < cols; ++c) {
      if (dense(r, c) != 0.0) {
        if (first < 0) first = c;
        last = c;
      }
    }
    if (first >= 0) {
      lo[static_cast<std::size_t>(r)] = first;
      width = std::max(width, last - first + 1);
    }
  }
  std::vector<Index> first_col(static_cast<std::size_t>(rows));
  std::vector<double> values(static_cast<std::size_t>(rows * width), 0.0);
  for (Index r = 0; r < rows; ++r) {
    const Index fc = std::min(lo[static_cast<std::size_t>(r)], cols - width);
    first_col[static_cast<std::size_t>(r)] = fc;
    for (Index k = 0; k < width; ++k) values[static_cast<std::size_t>(r * width + k)] = dense(r, fc + k);
  }
  return BandedMatrix(rows, cols, width, std::move(first_col), std::move(values));
}

double BandedMatrix::at(Index r, Index c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("banded index out of range");
  const Index k = c - first_col(r);
  if (k < 0 || k >= width_) return 0.0;
  return band(r, k);
}

Eigen::MatrixXd BandedMatrix::to_dense() const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows_, cols_);
  for (Index r = 0; r < rows_; ++r) {
    for (Index k = 0; k < width_; ++k) out(r, first_col(r) + k) = band(r, k);
  }
  return out;
}

Eigen::VectorXd BandedMatrix::multiply(const Eigen::VectorXd& x) const {
  if (x.size() != cols_) throw std::invalid_argument("banded multiply: size mismatch");
  Eigen::VectorXd y(rows_);
  for (Index r = 0; r < rows_; ++r) {
    double acc = 0.0;
    const Index fc = first_col(r);
    for (Index k = 0; k < width_; ++k) acc += band(r, k) * x(fc + k);
    y(r) = acc;
  }
  return y;
}

Eigen::VectorXd BandedMatrix::multiply_transpose(const Eigen::VectorXd& x) const {
  if (x.size() != rows_) throw std::invalid_argument("banded multiply_transpose: size mismatch");
  Eigen::VectorXd y = Eigen::VectorXd::Zero(cols_);
  for (Index r = 0; r < rows_; ++r) {
    const Index fc = first_col(r);
    for (Index k = 0; k < width_; ++k) y(fc + k) += band(r, k) * x(r);
  }
  return y;
}

}  // namespace hrmlab
