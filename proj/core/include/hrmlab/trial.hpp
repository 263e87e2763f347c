#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hrmlab/config.hpp"

namespace hrmlab {

struct TrialRecord {
  std::uint64_t seed = 0;
  std::int64_t n = 0;
  std::int64_t p = 0;
  std::size_t replicate = 0;
  double a_np = 0.0;
  double mu = 0.0;
  /// a_np^{-2} ||S||_2
  double scaled_norm = 0.0;
  /// a_np^{-2} ||X X^T - D||_2 on the row process feeding X-hat.
  double offdiag_dev = 0.0;
  /// k largest of a_np^{-2} sum_k theta_k D~_{i-k}, i = 1..p, decreasing.
  std::vector<double> top;
  /// a_np^{-2} max_i (D~_{i-1} + theta^2 D~_i) when theta = (1, theta) on lags {0, 1}.
  std::optional<double> ma1_stat;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct TrialOptions {
  std::size_t top_k = 3;
  double rel_tol = 1e-8;
};

/// One replicate: noise -> X-hat -> S -> ||S||_2 plus diagnostics.
TrialRecord run_trial(const EnsembleSpec& spec, const TrialOptions& options = {});

/// Injective in (n, replicate) for a fixed base seed (n, replicate < 2^32).
std::uint64_t derive_seed(std::uint64_t base_seed, std::int64_t n, std::size_t replicate);

struct TrialBatch {
  ExperimentConfig config;
  /// Sorted by (n, replicate).
  std::vector<TrialRecord> records;

  [[nodiscard]] std::int64_t largest_n() const;
  [[nodiscard]] std::vector<const TrialRecord*> at_n(std::int64_t n) const;
};

/// Validates, then runs every (n, replicate) pair on `workers` threads.
/// Throws ValidationError before running anything when a hypothesis fails.
TrialBatch run_batch(const ExperimentConfig& config, unsigned workers = 1);

}  // namespace hrmlab
