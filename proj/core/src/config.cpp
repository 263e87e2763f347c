#include "hrmlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace hrmlab {

namespace {

// A check entry may be `true`/`false` or an object of parameters (enabled).
bool check_enabled(const nlohmann::json& checks, const char* key, bool fallback) {
  if (!checks.contains(key)) return fallback;
  const auto& entry = checks.at(key);
  if (entry.is_boolean()) return entry.get<bool>();
  if (entry.is_object()) return entry.value("enabled", true);
  throw std::invalid_argument(std::string("checks.") + key + " must be a boolean or an object");
}

template <typename T>
void read_param(const nlohmann::json& checks, const char* key, const char* param, T& out) {
  if (!checks.contains(key) || !checks.at(key).is_object()) return;
  const auto& entry = checks.at(key);
  if (entry.contains(param)) out = entry.at(param).get<T>();
}

}  // namespace

std::int64_t DimensionRule::p_of_n(std::int64_t n) const {
  if (n < 1) throw std::invalid_argument("dimension rule needs n >= 1");
  auto p = static_cast<std::int64_t>(std::llround(constant * std::pow(static_cast<double>(n), beta)));
  p = std::max<std::int64_t>(p, 1);
  if (p_max > 0) p = std::min(p, p_max);
  return p;
}

void to_json(nlohmann::json& j, const DimensionRule& rule) {
  j = nlohmann::json{{"beta", rule.beta}, {"const", rule.constant}};
  if (rule.p_max > 0) j["p_max"] = rule.p_max;
}

void from_json(const nlohmann::json& j, DimensionRule& rule) {
  rule.beta = j.at("beta").get<double>();
  rule.constant = j.value("const", 1.0);
  rule.p_max = j.value("p_max", std::int64_t{0});
  if (!(rule.beta > 0.0)) throw std::invalid_argument("dimension_rule.beta must be positive");
  if (!(rule.constant > 0.0)) throw std::invalid_argument("dimension_rule.const must be positive");
  if (rule.p_max < 0) throw std::invalid_argument("dimension_rule.p_max must be nonnegative");
}

void to_json(nlohmann::json& j, const CheckSettings& c) {
  j = nlohmann::json{
      {"envelope", {{"enabled", c.envelope}, {"slack", c.slack}, {"z", c.z}, {"levels", c.levels}}},
      {"ks", {{"enabled", c.ks}, {"threshold", c.ks_threshold}}},
      {"order_stats",
       {{"enabled", c.order_stats},
        {"k", c.top_k},
        {"limit_draws", c.limit_draws},
        {"z", c.order_z},
        {"rel_slack", c.order_rel_slack}}},
      {"offdiag", {{"enabled", c.offdiag}, {"threshold", c.offdiag_threshold}}},
      {"ma1", {{"enabled", c.ma1}, {"threshold", c.ma1_threshold}}},
  };
}

void from_json(const nlohmann::json& j, CheckSettings& c) {
  c = CheckSettings{};
  c.envelope = check_enabled(j, "envelope", c.envelope);
  read_param(j, "envelope", "slack", c.slack);
  read_param(j, "envelope", "z", c.z);
  read_param(j, "envelope", "levels", c.levels);
  c.ks = check_enabled(j, "ks", c.ks);
  read_param(j, "ks", "threshold", c.ks_threshold);
  c.order_stats = check_enabled(j, "order_stats", c.order_stats);
  read_param(j, "order_stats", "k", c.top_k);
  read_param(j, "order_stats", "limit_draws", c.limit_draws);
  read_param(j, "order_stats", "z", c.order_z);
  read_param(j, "order_stats", "rel_slack", c.order_rel_slack);
  c.offdiag = check_enabled(j, "offdiag", c.offdiag);
  read_param(j, "offdiag", "threshold", c.offdiag_threshold);
  c.ma1 = check_enabled(j, "ma1", c.ma1);
  read_param(j, "ma1", "threshold", c.ma1_threshold);
  for (double level : c.levels) {
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("envelope levels must lie in (0, 1)");
  }
  if (c.top_k == 0) throw std::invalid_argument("order_stats.k must be positive");
}

EnsembleSpec ExperimentConfig::spec_for(std::int64_t n, std::uint64_t trial_seed) const {
  return {model, filter, rule.p_of_n(n), n, trial_seed};
}

void to_json(nlohmann::json& j, const ExperimentConfig& config) {
  j = nlohmann::json{{"model", config.model},       {"filter", config.filter},
                     {"dimension_rule", config.rule}, {"n_values", config.n_values},
                     {"replicates", config.replicates}, {"seed", config.seed},
                     {"checks", config.checks},     {"rel_tol", config.rel_tol}};
}

void from_json(const nlohmann::json& j, ExperimentConfig& config) {
  config.model = j.at("model").get<TailModel>();
  config.filter = j.at("filter").get<FilterSpec>();
  config.rule = j.at("dimension_rule").get<DimensionRule>();
  config.n_values = j.at("n_values").get<std::vector<std::int64_t>>();
  config.replicates = j.at("replicates").get<std::size_t>();
  config.seed = j.value("seed", std::uint64_t{1});
  config.checks = j.contains("checks") ? j.at("checks").get<CheckSettings>() : CheckSettings{};
  config.rel_tol = j.value("rel_tol", 1e-8);
  if (config.n_values.empty()) throw std::invalid_argument("n_values must be nonempty");
  for (auto n : config.n_values) {
    if (n < 1) throw std::invalid_argument("n_values entries must be positive");
  }
  if (config.replicates == 0) throw std::invalid_argument("replicates must be positive");
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("config '" + path + "' is not valid JSON: " + e.what());
  }
  return j.get<ExperimentConfig>();
}

}  // namespace hrmlab
