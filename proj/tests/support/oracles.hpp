#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library under test except for plain data types.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "hrmlab/rv_noise.hpp"

namespace hrmlab::oracle {

/// Largest |eigenvalue| by a full dense symmetric eigensolve.
inline double dense_norm(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

/// Symmetric matrix with iid Gaussian or symmetric Pareto(alpha) entries.
inline Eigen::MatrixXd random_symmetric(std::mt19937_64& gen, Eigen::Index dim, bool heavy, double alpha = 1.2) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      double v = normal(gen);
      if (heavy) {
        const double u = 1.0 - unif(gen);
        v = (unif(gen) < 0.5 ? -1.0 : 1.0) * std::pow(u, -1.0 / alpha);
      }
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  return a;
}

/// Wraps a dense block as noise with logical offsets.
inline NoisePanel panel(const Eigen::MatrixXd& values, std::int64_t row_offset = 0, std::int64_t col_offset = 0) {
  return NoisePanel{OffsetMatrix{values, row_offset, col_offset}, 0};
}

/// X-hat_{it} = sum_j sum_k c_j theta_k Z_{i-k,t-j}, i = 1..p, t = 1..n, by
/// direct quadruple loop over logical indices.
template <typename CoeffC, typename CoeffTheta>
Eigen::MatrixXd direct_xhat(const NoisePanel& z, const CoeffC& c, const CoeffTheta& theta, std::int64_t p,
                            std::int64_t n) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(p, n);
  for (std::int64_t i = 1; i <= p; ++i) {
    for (std::int64_t t = 1; t <= n; ++t) {
      double acc = 0.0;
      for (std::int64_t j = c.min_lag(); j <= c.max_lag(); ++j) {
        for (std::int64_t k = theta.min_lag(); k <= theta.max_lag(); ++k) {
          acc += c.at(j) * theta.at(k) * z.at(i - k, t - j);
        }
      }
      out(i - 1, t - 1) = acc;
    }
  }
  return out;
}

inline bool rel_close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace hrmlab::oracle
