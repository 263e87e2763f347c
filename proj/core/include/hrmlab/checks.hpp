#pragma once

// Statistical checks of a trial batch against the limit laws.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "hrmlab/limit_law.hpp"
#include "hrmlab/statistics.hpp"
#include "hrmlab/trial.hpp"

namespace hrmlab {

struct EnvelopePoint {
  double level = 0.0;  // lower-CDF level defining x
  double x = 0.0;
  double empirical = 0.0;
  double cdf_lower = 0.0;
  double cdf_upper = 0.0;
  double stderr_lower = 0.0;
  double stderr_upper = 0.0;
  double tol_lower = 0.0;
  double tol_upper = 0.0;
  /// (empirical - lower) / (upper - lower); nullopt when the envelope is a single curve.
  std::optional<double> position;
  bool pass = false;
};

/// Envelope check on the largest sample size. A grid point passes when
/// cdf_lower - tol_lower <= ECDF <= cdf_upper + tol_upper, with
/// tol = slack + z * binomial stderr of the bound being compared.
struct EnvelopeReport {
  std::int64_t n = 0;
  std::size_t samples = 0;
  BoundConstants bounds;
  double slack = 0.0;
  double z = 0.0;
  std::vector<EnvelopePoint> points;
  bool pass = false;
};

EnvelopeReport envelope_check(std::span<const double> scaled_norms, const BoundConstants& bounds,
                              const CheckSettings& settings);
EnvelopeReport envelope_check(const TrialBatch& batch);

/// KS distance of scaled_norm against the exact Frechet law; only
/// applicable when a single theta_k is nonzero.
struct KsReport {
  std::int64_t n = 0;
  std::size_t samples = 0;
  bool applicable = false;
  double distance_to_lower = 0.0;
  double distance_to_upper = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

KsReport ks_check(const TrialBatch& batch);

struct RankComparison {
  std::size_t rank = 0;
  Spread empirical;
  Spread limit;
  double tolerance = 0.0;
  bool pass = false;
};

/// Rank-by-rank medians of the top-k filtered diagonal statistics against
/// Monte Carlo draws of the limiting point process.
struct OrderStatReport {
  std::int64_t n = 0;
  std::size_t samples = 0;
  std::size_t limit_draws = 0;
  std::vector<RankComparison> ranks;
  bool pass = false;
};

OrderStatReport order_stat_check(const TrialBatch& batch);

struct OffdiagReport {
  std::vector<std::int64_t> n_values;
  std::vector<double> medians;
  bool decreasing = false;
  double threshold = 0.0;
  bool pass = false;
};

OffdiagReport offdiag_trend_check(const TrialBatch& batch);

/// KS distance of the MA(1) diagonal maximum against the Frechet law with
/// scale max{1, theta^2} sum_j c_j^2.
struct Ma1Report {
  std::int64_t n = 0;
  std::size_t samples = 0;
  bool applicable = false;
  double scale = 0.0;
  double distance = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

Ma1Report ma1_check(const TrialBatch& batch);

struct CheckSuite {
  std::optional<EnvelopeReport> envelope;
  std::optional<KsReport> ks;
  std::optional<OrderStatReport> order_stats;
  std::optional<OffdiagReport> offdiag;
  std::optional<Ma1Report> ma1;

  /// All enabled and applicable checks passed.
  [[nodiscard]] bool pass() const;
};

/// Runs every check enabled in batch.config.checks.
CheckSuite run_checks(const TrialBatch& batch);

void to_json(nlohmann::json& j, const EnvelopeReport& r);
void to_json(nlohmann::json& j, const KsReport& r);
void to_json(nlohmann::json& j, const OrderStatReport& r);
void to_json(nlohmann::json& j, const OffdiagReport& r);
void to_json(nlohmann::json& j, const Ma1Report& r);
void to_json(nlohmann::json& j, const CheckSuite& suite);

}  // namespace hrmlab
