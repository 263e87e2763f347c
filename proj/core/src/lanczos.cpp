#include "hrmlab/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hrmlab/rng.hpp"

namespace hrmlab {

namespace {

Eigen::VectorXd random_start(Eigen::Index n, std::uint64_t seed) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto u = rng::uniform_pair(seed, rng::Stream::lanczos, static_cast<std::uint32_t>(i), 0);
    v(i) = u.first - 0.5;
  }
  return v / v.norm();
}

}  // namespace

ExtremeEigenpairs extreme_eigenvalues(const SymmetricOperator& op, const LanczosOptions& options) {
  const Eigen::Index n = op.dim();
  if (n <= 0) throw std::invalid_argument("extreme_eigenvalues: operator has dimension zero");
  if (!(options.rel_tol > 0.0)) throw std::invalid_argument("extreme_eigenvalues: rel_tol must be positive");

  const Eigen::Index basis_cap = std::min<Eigen::Index>(std::max(options.max_basis, 2), n);
  Eigen::MatrixXd basis(n, basis_cap);
  Eigen::VectorXd start = random_start(n, options.seed);
  Eigen::VectorXd w(n);
  std::vector<double> alphas;
  std::vector<double> betas;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tridiag;
  int iterations = 0;
  double last_residual = std::numeric_limits<double>::infinity();

  for (;;) {
    alphas.clear();
    betas.clear();
    basis.col(0) = start;
    double op_scale = 0.0;

    for (Eigen::Index k = 0;; ++k) {
      op.apply(basis.col(k), w);
      ++iterations;
      const double a = basis.col(k).dot(w);
      w -= a * basis.col(k);
      if (k > 0) w -= betas.back() * basis.col(k - 1);
      const auto span = basis.leftCols(k + 1);
      for (int pass = 0; pass < 2; ++pass) w -= span * (span.transpose() * w);
      const double b = w.norm();
      alphas.push_back(a);
      betas.push_back(b);
      op_scale = std::max({op_scale, std::abs(a), b});

      const Eigen::Index m = k + 1;
      const bool full = m == n;
      const bool breakdown = b <= 1e-13 * op_scale || full;
      const bool at_cap = m == basis_cap;
      const bool out_of_budget = iterations >= options.max_iterations;
      if (!(m <= 20 || m % 5 == 0 || breakdown || at_cap || out_of_budget)) {
        basis.col(k + 1) = w / b;
        continue;
      }

      const Eigen::Map<const Eigen::VectorXd> diag(alphas.data(), m);
      const Eigen::Map<const Eigen::VectorXd> sub(betas.data(), m - 1);
      tridiag.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      const auto& ritz = tridiag.eigenvalues();
      const auto& vecs = tridiag.eigenvectors();

      ExtremeEigenpairs result;
      result.lambda_min = ritz(0);
      result.lambda_max = ritz(m - 1);
      result.norm = std::max(std::abs(result.lambda_min), std::abs(result.lambda_max));
      result.iterations = iterations;
      if (result.norm == 0.0 && breakdown) return result;

      const double res_min = b * std::abs(vecs(m - 1, 0));
      const double res_max = b * std::abs(vecs(m - 1, m - 1));
      last_residual = result.norm > 0.0 ? std::max(res_min, res_max) / result.norm
                                        : std::numeric_limits<double>::infinity();
      result.relative_residual = breakdown ? 0.0 : last_residual;
      if (breakdown || last_residual < options.rel_tol) return result;

      if (out_of_budget) {
        throw ConvergenceError("Lanczos did not converge in " + std::to_string(iterations) +
                                   " iterations (relative residual " + std::to_string(last_residual) + ")",
                               last_residual);
      }
      if (at_cap) {
        start = basis.leftCols(m) * (vecs.col(0) + vecs.col(m - 1));
        start.normalize();
        break;
      }
      basis.col(k + 1) = w / b;
    }
  }
}

}  // namespace hrmlab
