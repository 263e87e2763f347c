#pragma once

// Centering algebra, the centered sample covariance and its spectral norm,
// and the HDH^T diagnostics.

#include <Eigen/Dense>

#include "hrmlab/banded.hpp"
#include "hrmlab/lanczos.hpp"
#include "hrmlab/linear_filter.hpp"
#include "hrmlab/rv_noise.hpp"

namespace hrmlab {

/// Dense symmetric matrix. Construction rejects inputs whose asymmetry
/// exceeds 1e-12 relative to the largest entry, then symmetrizes exactly.
class SymMatrix {
 public:
  static constexpr double kSymmetryTolerance = 1e-12;

  SymMatrix() = default;
  explicit SymMatrix(Eigen::MatrixXd m);

  [[nodiscard]] Eigen::Index dim() const { return m_.rows(); }
  [[nodiscard]] const Eigen::MatrixXd& dense() const { return m_; }
  [[nodiscard]] double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  Eigen::MatrixXd m_;
};

/// Scalar mu and banded H subtracted as n * mu * H H^T.
struct CenteringSpec {
  double mu = 0.0;
  BandedMatrix H;
  Eigen::Index n = 0;
};

/// p x 3p matrix with H_ij = theta_{p-(j-i)} for 0 <= j - i <= 2p (1-based),
/// stored as a band. Column j pairs with row j - p of the row process.
BandedMatrix build_H(const CoefficientSequence& theta, Eigen::Index p);

/// Centering scalar: 0 for alpha < 2, truncated second moment at a_np for
/// alpha = 2 with infinite variance, E(Z^2) otherwise; times sum_j c_j^2.
double mu_x_alpha(const TailModel& model, const CoefficientSequence& c, double a_np);

/// S = X-hat X-hat^T - n mu H H^T.
SymMatrix centered_covariance(const Eigen::MatrixXd& xhat, const CenteringSpec& centering);

/// max |eigenvalue|; throws ConvergenceError after 10^4 iterations.
double spectral_norm(const SymMatrix& m, double rel_tol = 1e-8);
double spectral_norm(const SymmetricOperator& op, double rel_tol = 1e-8);

/// D_i = sum_t x_it^2
Eigen::VectorXd gram_diag(const Eigen::MatrixXd& x);

/// D_i - n mu, with n the column count of x.
Eigen::VectorXd centered_gram_diag(const Eigen::MatrixXd& x, double mu);

/// a_np^{-2} || x x^T - diag(x x^T) ||_2
double offdiag_deviation(const Eigen::MatrixXd& x, double a_np);

/// H diag(d) H^T, accumulated over the overlapping bands.
SymMatrix hdh_matrix(const BandedMatrix& H, const Eigen::VectorXd& d);

/// Diagonal of H diag(d) H^T only.
Eigen::VectorXd hdh_diagonal(const BandedMatrix& H, const Eigen::VectorXd& d);

/// Maximum absolute row sum.
double infinity_norm(const SymMatrix& m);

class DenseOperator final : public SymmetricOperator {
 public:
  explicit DenseOperator(const SymMatrix& m) : m_(m) {}
  [[nodiscard]] Eigen::Index dim() const override { return m_.dim(); }
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const override;

 private:
  const SymMatrix& m_;
};

/// x -> X-hat (X-hat^T x) - n mu H (H^T x) without forming S.
class CovarianceOperator final : public SymmetricOperator {
 public:
  CovarianceOperator(const Eigen::MatrixXd& xhat, const CenteringSpec& centering);
  [[nodiscard]] Eigen::Index dim() const override { return xhat_.rows(); }
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const override;

 private:
  const Eigen::MatrixXd& xhat_;
  const CenteringSpec& centering_;
};

/// x -> X (X^T x) - D x, the Gram matrix with its diagonal removed.
class OffdiagGramOperator final : public SymmetricOperator {
 public:
  explicit OffdiagGramOperator(const Eigen::MatrixXd& x);
  [[nodiscard]] Eigen::Index dim() const override { return x_.rows(); }
  void apply(const Eigen::VectorXd& v, Eigen::VectorXd& y) const override;

 private:
  const Eigen::MatrixXd& x_;
  Eigen::VectorXd diag_;
};

}  // namespace hrmlab
