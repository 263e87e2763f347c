#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hrmlab/config.hpp"

namespace hrmlab {

/// Largest admissible growth exponent beta for p ~ n^beta; +inf for alpha <= 1.
double beta_limit(double alpha);

struct HypothesisCheck {
  std::string name;
  bool pass = false;
  /// Distance to the boundary of the hypothesis; nullopt when unbounded.
  std::optional<double> margin;
  std::string detail;
};

struct ValidationReport {
  std::vector<HypothesisCheck> checks;

  [[nodiscard]] bool pass() const;
  [[nodiscard]] std::string summary() const;
};

void to_json(nlohmann::json& j, const HypothesisCheck& check);
void to_json(nlohmann::json& j, const ValidationReport& report);

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(ValidationReport report);
  [[nodiscard]] const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

ValidationReport validate(const EnsembleSpec& spec, const DimensionRule& rule);

/// Validates the template at every configured sample size.
ValidationReport validate(const ExperimentConfig& config);

}  // namespace hrmlab
