#include "hrmlab/linear_filter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace hrmlab {

namespace {

enum class Axis { rows, cols };

// out(i, t) = sum_l seq_l src(i - l, t) for Axis::rows, src(i, t - l) for
// Axis::cols, on the logical rectangle rows x cols. Accumulates lag by lag
// in ascending order so results are reproducible bit for bit.
OffsetMatrix lag_filter(const OffsetMatrix& src, const CoefficientSequence& seq, IndexRange rows, IndexRange cols,
                        Axis axis, const char* what) {
  if (rows.empty() || cols.empty()) throw std::invalid_argument(std::string(what) + ": empty output range");
  IndexRange need_rows = rows;
  IndexRange need_cols = cols;
  IndexRange& lagged = axis == Axis::rows ? need_rows : need_cols;
  lagged = {lagged.begin - seq.max_lag(), lagged.end - seq.min_lag()};
  if (!src.rows().contains(need_rows) || !src.cols().contains(need_cols)) {
    throw std::out_of_range(std::string(what) + ": noise covers rows " + to_string(src.rows()) + " x cols " +
                            to_string(src.cols()) + " but rows " + to_string(need_rows) + " x cols " +
                            to_string(need_cols) + " are required");
  }

  OffsetMatrix out;
  out.row_offset = rows.begin;
  out.col_offset = cols.begin;
  out.values = Eigen::MatrixXd::Zero(rows.size(), cols.size());
  for (std::int64_t lag = seq.min_lag(); lag <= seq.max_lag(); ++lag) {
    const double w = seq.at(lag);
    if (w == 0.0) continue;
    const std::int64_t r0 = rows.begin - (axis == Axis::rows ? lag : 0) - src.row_offset;
    const std::int64_t c0 = cols.begin - (axis == Axis::cols ? lag : 0) - src.col_offset;
    out.values.noalias() += w * src.values.block(r0, c0, rows.size(), cols.size());
  }
  return out;
}

}  // namespace

CoefficientSequence::CoefficientSequence(std::vector<double> values, std::int64_t min_lag, std::string name)
    : values_(std::move(values)), min_lag_(min_lag), name_(std::move(name)) {
  if (values_.empty()) throw std::invalid_argument("coefficient sequence must have at least one value");
  abs_sum_ = 0.0;
  sq_sum_ = 0.0;
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("coefficients must be finite");
    abs_sum_ += std::abs(v);
    sq_sum_ += v * v;
  }
  if (abs_sum_ == 0.0) throw std::invalid_argument("coefficient sequence must have a nonzero value");
}

CoefficientSequence CoefficientSequence::spike(double value, std::int64_t lag, std::string name) {
  return CoefficientSequence({value}, lag, std::move(name));
}

double CoefficientSequence::at(std::int64_t lag) const {
  if (lag < min_lag_ || lag > max_lag()) return 0.0;
  return values_[static_cast<std::size_t>(lag - min_lag_)];
}

double CoefficientSequence::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double CoefficientSequence::max_square() const {
  const double m = max_abs();
  return m * m;
}

int CoefficientSequence::nonzero_count() const {
  return static_cast<int>(std::count_if(values_.begin(), values_.end(), [](double v) { return v != 0.0; }));
}

CoefficientSequence CoefficientSequence::scaled(double factor) const {
  std::vector<double> v = values_;
  for (double& x : v) x *= factor;
  return CoefficientSequence(std::move(v), min_lag_, name_);
}

void to_json(nlohmann::json& j, const CoefficientSequence& seq) {
  j = nlohmann::json{{"min_lag", seq.min_lag()}, {"values", seq.values()}};
  if (!seq.name().empty()) j["name"] = seq.name();
}

void from_json(const nlohmann::json& j, CoefficientSequence& seq) {
  seq = CoefficientSequence(j.at("values").get<std::vector<double>>(), j.value("min_lag", std::int64_t{0}),
                            j.value("name", std::string{}));
}

void to_json(nlohmann::json& j, const FilterSpec& spec) {
  j = nlohmann::json{{"c", spec.c}, {"theta", spec.theta}, {"delta", spec.delta}};
}

void from_json(const nlohmann::json& j, FilterSpec& spec) {
  spec.c = j.at("c").get<CoefficientSequence>();
  spec.theta = j.at("theta").get<CoefficientSequence>();
  spec.delta = j.at("delta").get<double>();
  if (!(spec.delta > 0.0 && spec.delta < 1.0)) throw std::invalid_argument("filter delta must lie in (0, 1)");
}

double delta_norm(const CoefficientSequence& seq, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta_norm requires delta > 0");
  double sum = 0.0;
  for (double v : seq.values()) {
    if (v != 0.0) sum += std::pow(std::abs(v), delta);
  }
  return sum;
}

CoefficientFamily CoefficientFamily::geometric(double ratio) {
  const double r = std::abs(ratio);
  return {"geometric",
          [ratio](std::int64_t j) { return std::pow(ratio, static_cast<double>(j)); },
          [r](std::int64_t lag) {
            if (r >= 1.0) return std::numeric_limits<double>::infinity();
            return std::pow(r, static_cast<double>(lag)) / (1.0 - r);
          }};
}

CoefficientFamily CoefficientFamily::polynomial(double power) {
  return {"polynomial",
          [power](std::int64_t j) { return std::pow(1.0 + static_cast<double>(j), -power); },
          [power](std::int64_t lag) {
            if (power <= 1.0) return std::numeric_limits<double>::infinity();
            // sum_{m >= lag + 1} m^{-s} <= int_lag^inf x^{-s} dx for lag >= 1.
            if (lag == 0) return 1.0 + 1.0 / (power - 1.0);
            return std::pow(static_cast<double>(lag), 1.0 - power) / (power - 1.0);
          }};
}

TruncatedSequence truncate_family(const CoefficientFamily& family, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("truncation epsilon must be positive");
  if (!std::isfinite(family.tail_bound(0))) {
    throw std::invalid_argument("coefficient family '" + family.name + "' is not absolutely summable");
  }
  constexpr std::int64_t kMaxWindow = 1 << 22;
  std::int64_t last = 0;
  while (family.tail_bound(last + 1) >= epsilon) {
    if (++last > kMaxWindow) throw std::invalid_argument("truncation window exceeds 2^22 lags");
  }
  std::vector<double> values(static_cast<std::size_t>(last + 1));
  for (std::int64_t j = 0; j <= last; ++j) values[static_cast<std::size_t>(j)] = family.coefficient(j);
  return {CoefficientSequence(std::move(values), 0, family.name), family.tail_bound(last + 1)};
}

OffsetMatrix build_xi(const NoisePanel& noise, const CoefficientSequence& theta, IndexRange rows, IndexRange cols) {
  return lag_filter(noise.data, theta, rows, cols, Axis::rows, "build_xi");
}

OffsetMatrix build_row_process(const NoisePanel& noise, const CoefficientSequence& c, IndexRange rows,
                               std::int64_t n) {
  if (n < 1) throw std::invalid_argument("build_row_process: n must be positive");
  return lag_filter(noise.data, c, rows, {1, n + 1}, Axis::cols, "build_row_process");
}

Eigen::MatrixXd build_xhat(const NoisePanel& noise, const FilterSpec& spec, std::int64_t p, std::int64_t n) {
  if (p < 1 || n < 1) throw std::invalid_argument("build_xhat: p and n must be positive");
  const IndexRange rows{1, p + 1};
  const OffsetMatrix xi = build_xi(noise, spec.theta, rows, xhat_noise_cols(spec, n));
  return lag_filter(xi, spec.c, rows, {1, n + 1}, Axis::cols, "build_xhat").values;
}

IndexRange xhat_noise_rows(const FilterSpec& spec, std::int64_t p) {
  return {1 - spec.theta.max_lag(), p + 1 - spec.theta.min_lag()};
}

IndexRange xhat_noise_cols(const FilterSpec& spec, std::int64_t n) {
  return {1 - spec.c.max_lag(), n + 1 - spec.c.min_lag()};
}

IndexRange row_process_rows(const FilterSpec& spec, std::int64_t p) { return xhat_noise_rows(spec, p); }

}  // namespace hrmlab
