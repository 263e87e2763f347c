#include "hrmlab/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hrmlab {

namespace {

constexpr double kZeroMeanThreshold = 5.0 / 3.0;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

double beta_limit(double alpha) {
  if (!(alpha > 0.0 && alpha < 4.0)) throw std::invalid_argument("beta_limit: alpha must lie in (0, 4)");
  if (alpha <= 1.0) return std::numeric_limits<double>::infinity();
  if (alpha < 2.0) return std::max((2.0 - alpha) / (alpha - 1.0), 0.5);
  if (alpha < 3.0) return std::max((4.0 - alpha) / (4.0 * (alpha - 1.0)), 1.0 / 3.0);
  return (4.0 - alpha) / (3.0 * alpha - 4.0);
}

bool ValidationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const HypothesisCheck& c) { return c.pass; });
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (c.margin) os << " (margin " << fmt(*c.margin) << ")";
    if (!c.detail.empty()) os << ": " << c.detail;
    os << '\n';
  }
  return os.str();
}

void to_json(nlohmann::json& j, const HypothesisCheck& check) {
  j = nlohmann::json{{"name", check.name}, {"pass", check.pass}, {"detail", check.detail}};
  j["margin"] = check.margin ? nlohmann::json(*check.margin) : nlohmann::json(nullptr);
}

void to_json(nlohmann::json& j, const ValidationReport& report) {
  j = nlohmann::json{{"pass", report.pass()}, {"hypotheses", report.checks}};
}

ValidationError::ValidationError(ValidationReport report)
    : std::runtime_error("ensemble violates model hypotheses:\n" + report.summary()), report_(std::move(report)) {}

ValidationReport validate(const EnsembleSpec& spec, const DimensionRule& rule) {
  ValidationReport report;
  const double alpha = spec.model.alpha;
  auto add = [&report](std::string name, bool pass, std::optional<double> margin, std::string detail) {
    report.checks.push_back({std::move(name), pass, margin, std::move(detail)});
  };

  const bool alpha_ok = alpha > 0.0 && alpha < 4.0;
  add("alpha_range", alpha_ok, std::min(alpha, 4.0 - alpha), "alpha = " + fmt(alpha) + " must lie in (0, 4)");

  std::string model_error;
  try {
    spec.model.validate();
  } catch (const std::invalid_argument& e) {
    model_error = e.what();
  }
  add("tail_model", model_error.empty(), std::nullopt, model_error.empty() ? "parameters consistent" : model_error);

  const double delta = spec.filter.delta;
  const double delta_cap = std::min(alpha, 1.0);
  add("delta_summability", delta > 0.0 && delta < delta_cap, delta_cap - delta,
      "delta = " + fmt(delta) + " < min(alpha, 1) = " + fmt(delta_cap) + "; sum|c|^delta = " +
          fmt(delta_norm(spec.filter.c, delta)) + ", sum|theta|^delta = " + fmt(delta_norm(spec.filter.theta, delta)));

  if (alpha > kZeroMeanThreshold) {
    const bool zero_mean = spec.model.has_zero_mean();
    add("zero_mean", zero_mean, std::nullopt,
        zero_mean ? "E Z = 0" : "alpha > 5/3 requires E Z = 0 (use a symmetric family or set centered)");
    add("tail_balance", true, std::nullopt, "exact balance q = " + fmt(spec.model.q));
  } else {
    add("zero_mean", true, std::nullopt, "not required for alpha <= 5/3");
    add("tail_balance", true, std::nullopt, "not required for alpha <= 5/3");
  }

  if (alpha_ok) {
    const double limit = beta_limit(alpha);
    const bool finite = std::isfinite(limit);
    add("dimension_growth", rule.beta > 0.0 && rule.beta < limit,
        finite ? std::optional<double>(limit - rule.beta) : std::nullopt,
        "beta = " + fmt(rule.beta) + " < beta_limit(alpha) = " + (finite ? fmt(limit) : std::string("inf")));
  } else {
    add("dimension_growth", false, std::nullopt, "beta_limit undefined outside (0, 4)");
  }

  add("dimensions", spec.p >= 1 && spec.n >= 1, static_cast<double>(std::min(spec.p, spec.n) - 1),
      "p = " + std::to_string(spec.p) + ", n = " + std::to_string(spec.n));
  return report;
}

ValidationReport validate(const ExperimentConfig& config) {
  ValidationReport merged;
  for (auto n : config.n_values) {
    auto report = validate(config.spec_for(n, config.seed), config.rule);
    for (auto& check : report.checks) {
      if (check.name == "dimensions") check.name += "[n=" + std::to_string(n) + "]";
      else if (n != config.n_values.front()) continue;
      merged.checks.push_back(std::move(check));
    }
  }
  return merged;
}

}  // namespace hrmlab
