#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hrmlab/linear_filter.hpp"
#include "hrmlab/rv_noise.hpp"

namespace hrmlab {

/// Everything needed to draw one replicate.
struct EnsembleSpec {
  TailModel model;
  FilterSpec filter;
  std::int64_t p = 1;
  std::int64_t n = 1;
  std::uint64_t seed = 0;
};

/// p = round(constant * n^beta), optionally capped at p_max.
struct DimensionRule {
  double beta = 0.5;
  double constant = 1.0;
  std::int64_t p_max = 0;  // 0: no cap

  [[nodiscard]] std::int64_t p_of_n(std::int64_t n) const;
};

void to_json(nlohmann::json& j, const DimensionRule& rule);
void from_json(const nlohmann::json& j, DimensionRule& rule);

struct CheckSettings {
  bool envelope = true;
  double slack = 0.03;
  double z = 4.0;
  std::vector<double> levels{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

  bool ks = true;
  double ks_threshold = 0.10;

  bool order_stats = true;
  std::size_t top_k = 3;
  std::size_t limit_draws = 20000;
  double order_z = 4.0;
  double order_rel_slack = 0.10;

  bool offdiag = true;
  double offdiag_threshold = 0.15;

  bool ma1 = false;
  double ma1_threshold = 0.10;
};

void to_json(nlohmann::json& j, const CheckSettings& checks);
void from_json(const nlohmann::json& j, CheckSettings& checks);

struct ExperimentConfig {
  TailModel model = TailModel::pareto_symmetric(1.5);
  FilterSpec filter;
  DimensionRule rule;
  std::vector<std::int64_t> n_values{1000};
  std::size_t replicates = 500;
  std::uint64_t seed = 1;
  CheckSettings checks;
  double rel_tol = 1e-8;

  /// Template spec at sample size n with p from the dimension rule.
  [[nodiscard]] EnsembleSpec spec_for(std::int64_t n, std::uint64_t seed) const;
};

void to_json(nlohmann::json& j, const ExperimentConfig& config);
void from_json(const nlohmann::json& j, ExperimentConfig& config);

ExperimentConfig load_config(const std::string& path);

}  // namespace hrmlab
