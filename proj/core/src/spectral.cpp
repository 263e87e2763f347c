#include "hrmlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace hrmlab {

SymMatrix::SymMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("SymMatrix: matrix is not square");
  if (!m_.allFinite()) throw std::invalid_argument("SymMatrix: non-finite entry");
  if (m_.size() == 0) return;
  const double scale = m_.cwiseAbs().maxCoeff();
  const double asymmetry = (m_ - m_.transpose()).cwiseAbs().maxCoeff();
  if (asymmetry > kSymmetryTolerance * scale) {
    throw std::invalid_argument("SymMatrix: asymmetry " + std::to_string(asymmetry) + " exceeds tolerance (scale " +
                                std::to_string(scale) + ")");
  }
  m_ = 0.5 * (m_ + m_.transpose()).eval();
}

BandedMatrix build_H(const CoefficientSequence& theta, Eigen::Index p) {
  if (p < 1) throw std::invalid_argument("build_H: p must be positive");
  const std::int64_t k_lo = std::max<std::int64_t>(theta.min_lag(), -p);
  const std::int64_t k_hi = std::min<std::int64_t>(theta.max_lag(), p);
  const Eigen::Index width = k_hi >= k_lo ? k_hi - k_lo + 1 : 0;

  std::vector<Eigen::Index> first_col(static_cast<std::size_t>(p), 0);
  std::vector<double> values(static_cast<std::size_t>(p * width));
  for (Eigen::Index r = 0; r < p; ++r) {
    if (width == 0) continue;
    // 0-based column c = r + p - k holds theta_k.
    first_col[static_cast<std::size_t>(r)] = r + p - k_hi;
    for (Eigen::Index b = 0; b < width; ++b) values[static_cast<std::size_t>(r * width + b)] = theta.at(k_hi - b);
  }
  return BandedMatrix(p, 3 * p, width, std::move(first_col), std::move(values));
}

double mu_x_alpha(const TailModel& model, const CoefficientSequence& c, double a_np) {
  if (!(a_np > 0.0)) throw std::invalid_argument("mu_x_alpha: a_np must be positive");
  if (model.alpha < 2.0) return 0.0;
  const auto moment = second_moment(model);
  if (moment) return *moment * c.sq_sum();
  if (model.alpha == 2.0) return truncated_second_moment(model, a_np) * c.sq_sum();
  throw std::invalid_argument("mu_x_alpha: infinite variance with alpha > 2");
}

SymMatrix centered_covariance(const Eigen::MatrixXd& xhat, const CenteringSpec& centering) {
  if (xhat.rows() != centering.H.rows() || xhat.cols() != centering.n) {
    throw std::invalid_argument("centered_covariance: X-hat is " + std::to_string(xhat.rows()) + "x" +
                                std::to_string(xhat.cols()) + " but centering expects " +
                                std::to_string(centering.H.rows()) + "x" + std::to_string(centering.n));
  }
  Eigen::MatrixXd s = xhat * xhat.transpose();
  if (centering.mu != 0.0) {
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(centering.H.cols());
    s -= static_cast<double>(centering.n) * centering.mu * hdh_matrix(centering.H, ones).dense();
  }
  return SymMatrix(std::move(s));
}

double spectral_norm(const SymmetricOperator& op, double rel_tol) {
  LanczosOptions options;
  options.rel_tol = rel_tol;
  return extreme_eigenvalues(op, options).norm;
}

double spectral_norm(const SymMatrix& m, double rel_tol) { return spectral_norm(DenseOperator(m), rel_tol); }

Eigen::VectorXd gram_diag(const Eigen::MatrixXd& x) { return x.rowwise().squaredNorm(); }

Eigen::VectorXd centered_gram_diag(const Eigen::MatrixXd& x, double mu) {
  return gram_diag(x).array() - static_cast<double>(x.cols()) * mu;
}

double offdiag_deviation(const Eigen::MatrixXd& x, double a_np) {
  if (!(a_np > 0.0)) throw std::invalid_argument("offdiag_deviation: a_np must be positive");
  if (x.rows() <= 1) return 0.0;
  return spectral_norm(OffdiagGramOperator(x)) / (a_np * a_np);
}

SymMatrix hdh_matrix(const BandedMatrix& H, const Eigen::VectorXd& d) {
  if (d.size() != H.cols()) throw std::invalid_argument("hdh_matrix: d must have one entry per column of H");
  const Eigen::Index rows = H.rows();
  const Eigen::Index w = H.width();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows, rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Eigen::Index fi = H.first_col(i);
    for (Eigen::Index j = i; j < rows; ++j) {
      const Eigen::Index fj = H.first_col(j);
      const Eigen::Index lo = std::max(fi, fj);
      const Eigen::Index hi = std::min(fi, fj) + w;
      double acc = 0.0;
      for (Eigen::Index l = lo; l < hi; ++l) acc += H.band(i, l - fi) * d(l) * H.band(j, l - fj);
      out(i, j) = acc;
      out(j, i) = acc;
    }
  }
  return SymMatrix(std::move(out));
}

Eigen::VectorXd hdh_diagonal(const BandedMatrix& H, const Eigen::VectorXd& d) {
  if (d.size() != H.cols()) throw std::invalid_argument("hdh_diagonal: d must have one entry per column of H");
  Eigen::VectorXd out(H.rows());
  for (Eigen::Index i = 0; i < H.rows(); ++i) {
    double acc = 0.0;
    const Eigen::Index fi = H.first_col(i);
    for (Eigen::Index b = 0; b < H.width(); ++b) acc += H.band(i, b) * H.band(i, b) * d(fi + b);
    out(i) = acc;
  }
  return out;
}

double infinity_norm(const SymMatrix& m) {
  if (m.dim() == 0) return 0.0;
  return m.dense().cwiseAbs().rowwise().sum().maxCoeff();
}

void DenseOperator::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const { y.noalias() = m_.dense() * x; }

CovarianceOperator::CovarianceOperator(const Eigen::MatrixXd& xhat, const CenteringSpec& centering)
    : xhat_(xhat), centering_(centering) {
  if (xhat.rows() != centering.H.rows() || xhat.cols() != centering.n) {
    throw std::invalid_argument("CovarianceOperator: X-hat and centering dimensions disagree");
  }
}

void CovarianceOperator::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
  const Eigen::VectorXd u = xhat_.transpose() * x;
  y.noalias() = xhat_ * u;
  if (centering_.mu != 0.0) {
    y -= static_cast<double>(centering_.n) * centering_.mu *
         centering_.H.multiply(centering_.H.multiply_transpose(x));
  }
}

OffdiagGramOperator::OffdiagGramOperator(const Eigen::MatrixXd& x) : x_(x), diag_(gram_diag(x)) {}

void OffdiagGramOperator::apply(const Eigen::VectorXd& v, Eigen::VectorXd& y) const {
  const Eigen::VectorXd u = x_.transpose() * v;
  y.noalias() = x_ * u;
  y -= diag_.cwiseProduct(v);
}

}  // namespace hrmlab
