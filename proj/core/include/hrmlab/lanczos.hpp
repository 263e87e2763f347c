#pragma once

// Extreme eigenvalues of a symmetric operator by Lanczos with full
// reorthogonalization and explicit restarts.

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hrmlab {

/// Matrix-free symmetric linear map.
class SymmetricOperator {
 public:
  virtual ~SymmetricOperator() = default;
  [[nodiscard]] virtual Eigen::Index dim() const = 0;
  /// y = A x; y is resized by the callee if needed.
  virtual void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const = 0;
};

/// Thrown when the iteration cap is reached before the residual test passes.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual) : std::runtime_error(what), residual_(residual) {}
  [[nodiscard]] double residual() const { return residual_; }

 private:
  double residual_;
};

struct LanczosOptions {
  double rel_tol = 1e-8;
  int max_iterations = 10000;
  /// Krylov basis size before an explicit restart.
  int max_basis = 300;
  std::uint64_t seed = 0x5EEDu;
};

struct ExtremeEigenpairs {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  /// max(|lambda_min|, |lambda_max|)
  double norm = 0.0;
  int iterations = 0;
  /// max over both extremes of ||A v - lambda v|| / norm at exit.
  double relative_residual = 0.0;
};

ExtremeEigenpairs extreme_eigenvalues(const SymmetricOperator& op, const LanczosOptions& options = {});

}  // namespace hrmlab
