#include "hrmlab/checks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hrmlab/rng.hpp"
#include "hrmlab/statistics.hpp"

namespace hrmlab {

namespace {

// Normal-theory standard error of a sample median per unit IQR per sqrt(N):
// sqrt(pi/2) / 1.349.
constexpr double kMedianSePerIqr = 0.9291;
constexpr std::uint64_t kLimitStreamTag = 0x4C494D4954ull;

std::vector<double> scaled_norms_at(const TrialBatch& batch, std::int64_t n) {
  std::vector<double> out;
  for (const auto* r : batch.at_n(n)) out.push_back(r->scaled_norm);
  return out;
}

void require_records(const TrialBatch& batch) {
  if (batch.records.empty()) throw std::invalid_argument("check requested on an empty batch");
}

}  // namespace

EnvelopeReport envelope_check(std::span<const double> scaled_norms, const BoundConstants& bounds,
                              const CheckSettings& settings) {
  if (scaled_norms.empty()) throw std::invalid_argument("envelope_check needs at least one sample");
  EnvelopeReport report;
  report.samples = scaled_norms.size();
  report.bounds = bounds;
  report.slack = settings.slack;
  report.z = settings.z;
  report.pass = true;
  const bool degenerate = bounds.upper_scale == bounds.lower_scale;
  for (double level : settings.levels) {
    EnvelopePoint pt;
    pt.level = level;
    pt.x = frechet_quantile(level, bounds.upper_scale, bounds.alpha);
    pt.empirical = ecdf(scaled_norms, pt.x);
    pt.cdf_lower = bound_cdf_lower(pt.x, bounds);
    pt.cdf_upper = bound_cdf_upper(pt.x, bounds);
    pt.stderr_lower = binomial_stderr(pt.cdf_lower, report.samples);
    pt.stderr_upper = binomial_stderr(pt.cdf_upper, report.samples);
    pt.tol_lower = settings.slack + settings.z * pt.stderr_lower;
    pt.tol_upper = settings.slack + settings.z * pt.stderr_upper;
    if (!degenerate) pt.position = (pt.empirical - pt.cdf_lower) / (pt.cdf_upper - pt.cdf_lower);
    pt.pass = pt.empirical >= pt.cdf_lower - pt.tol_lower && pt.empirical <= pt.cdf_upper + pt.tol_upper;
    report.pass = report.pass && pt.pass;
    report.points.push_back(pt);
  }
  return report;
}

EnvelopeReport envelope_check(const TrialBatch& batch) {
  require_records(batch);
  const auto n = batch.largest_n();
  const auto values = scaled_norms_at(batch, n);
  auto report = envelope_check(values, bound_constants(batch.config.filter, batch.config.model.alpha),
                               batch.config.checks);
  report.n = n;
  return report;
}

KsReport ks_check(const TrialBatch& batch) {
  require_records(batch);
  KsReport report;
  report.n = batch.largest_n();
  const auto values = scaled_norms_at(batch, report.n);
  report.samples = values.size();
  report.threshold = batch.config.checks.ks_threshold;
  const auto bounds = bound_constants(batch.config.filter, batch.config.model.alpha);
  report.distance_to_lower = ks_distance(values, [&](double x) { return bound_cdf_lower(x, bounds); });
  report.distance_to_upper = ks_distance(values, [&](double x) { return bound_cdf_upper(x, bounds); });
  report.applicable = batch.config.filter.single_spike();
  report.pass = !report.applicable || report.distance_to_upper <= report.threshold;
  return report;
}

OrderStatReport order_stat_check(const TrialBatch& batch) {
  require_records(batch);
  const auto& config = batch.config;
  const std::size_t k = config.checks.top_k;
  OrderStatReport report;
  report.n = batch.largest_n();
  report.limit_draws = config.checks.limit_draws;
  const auto records = batch.at_n(report.n);
  report.samples = records.size();

  std::vector<std::vector<double>> limit(k);
  const std::uint64_t limit_base = rng::mix64(config.seed ^ kLimitStreamTag);
  for (std::size_t d = 0; d < report.limit_draws; ++d) {
    const auto draw = limit_order_statistics(config.filter, config.model.alpha, k, derive_seed(limit_base, 0, d));
    for (std::size_t r = 0; r < k; ++r) limit[r].push_back(draw[r]);
  }

  report.pass = true;
  for (std::size_t r = 0; r < k; ++r) {
    std::vector<double> empirical;
    for (const auto* rec : records) {
      if (r < rec->top.size()) empirical.push_back(rec->top[r]);
    }
    if (empirical.empty()) throw std::invalid_argument("order_stat_check: rank exceeds p");
    RankComparison cmp;
    cmp.rank = r + 1;
    cmp.empirical = spread(empirical);
    cmp.limit = spread(limit[r]);
    const double se = kMedianSePerIqr * std::hypot(cmp.empirical.iqr() / std::sqrt(double(empirical.size())),
                                                   cmp.limit.iqr() / std::sqrt(double(limit[r].size())));
    cmp.tolerance = config.checks.order_z * se + config.checks.order_rel_slack * std::abs(cmp.limit.median);
    cmp.pass = std::abs(cmp.empirical.median - cmp.limit.median) <= cmp.tolerance;
    report.pass = report.pass && cmp.pass;
    report.ranks.push_back(cmp);
  }
  return report;
}

OffdiagReport offdiag_trend_check(const TrialBatch& batch) {
  require_records(batch);
  OffdiagReport report;
  report.threshold = batch.config.checks.offdiag_threshold;
  for (const auto& r : batch.records) {
    if (report.n_values.empty() || report.n_values.back() != r.n) report.n_values.push_back(r.n);
  }
  for (auto n : report.n_values) {
    std::vector<double> devs;
    for (const auto* r : batch.at_n(n)) devs.push_back(r->offdiag_dev);
    report.medians.push_back(quantile(devs, 0.5));
  }
  report.decreasing = std::adjacent_find(report.medians.begin(), report.medians.end(),
                                         [](double a, double b) { return b >= a; }) == report.medians.end();
  report.pass = report.decreasing && report.medians.back() < report.threshold;
  return report;
}

Ma1Report ma1_check(const TrialBatch& batch) {
  require_records(batch);
  Ma1Report report;
  report.n = batch.largest_n();
  report.threshold = batch.config.checks.ma1_threshold;
  std::vector<double> values;
  for (const auto* r : batch.at_n(report.n)) {
    if (r->ma1_stat) values.push_back(*r->ma1_stat);
  }
  report.samples = values.size();
  report.applicable = !values.empty();
  if (!report.applicable) {
    report.pass = true;
    return report;
  }
  const auto& filter = batch.config.filter;
  report.scale = ma1_constants(filter.theta.at(1)).first * filter.c.sq_sum();
  const double alpha = batch.config.model.alpha;
  report.distance = ks_distance(values, [&](double x) { return frechet_cdf(x, report.scale, alpha); });
  report.pass = report.distance <= report.threshold;
  return report;
}

bool CheckSuite::pass() const {
  return (!envelope || envelope->pass) && (!ks || ks->pass) && (!order_stats || order_stats->pass) &&
         (!offdiag || offdiag->pass) && (!ma1 || ma1->pass);
}

CheckSuite run_checks(const TrialBatch& batch) {
  const auto& c = batch.config.checks;
  CheckSuite suite;
  if (c.envelope) suite.envelope = envelope_check(batch);
  if (c.ks) suite.ks = ks_check(batch);
  if (c.order_stats) suite.order_stats = order_stat_check(batch);
  if (c.offdiag) suite.offdiag = offdiag_trend_check(batch);
  if (c.ma1) suite.ma1 = ma1_check(batch);
  return suite;
}

namespace {

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json spread_json(const Spread& s) {
  return {{"median", s.median}, {"q25", s.q25}, {"q75", s.q75}, {"iqr", s.iqr()}};
}

}  // namespace

void to_json(nlohmann::json& j, const EnvelopeReport& r) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : r.points) {
    points.push_back({{"level", p.level},
                      {"x", p.x},
                      {"empirical_cdf", p.empirical},
                      {"bound_cdf_lower", p.cdf_lower},
                      {"bound_cdf_upper", p.cdf_upper},
                      {"stderr_lower", p.stderr_lower},
                      {"stderr_upper", p.stderr_upper},
                      {"tol_lower", p.tol_lower},
                      {"tol_upper", p.tol_upper},
                      {"position_in_envelope", optional_number(p.position)},
                      {"pass", p.pass}});
  }
  j = {{"pass", r.pass},
       {"n", r.n},
       {"samples", r.samples},
       {"lower_scale", r.bounds.lower_scale},
       {"upper_scale", r.bounds.upper_scale},
       {"alpha", r.bounds.alpha},
       {"slack", r.slack},
       {"z", r.z},
       {"points", points}};
}

void to_json(nlohmann::json& j, const KsReport& r) {
  j = {{"pass", r.pass},
       {"applicable", r.applicable},
       {"n", r.n},
       {"samples", r.samples},
       {"distance_to_lower_bound", r.distance_to_lower},
       {"distance_to_upper_bound", r.distance_to_upper},
       {"threshold", r.threshold}};
}

void to_json(nlohmann::json& j, const OrderStatReport& r) {
  nlohmann::json ranks = nlohmann::json::array();
  for (const auto& c : r.ranks) {
    ranks.push_back({{"rank", c.rank},
                     {"empirical", spread_json(c.empirical)},
                     {"limit", spread_json(c.limit)},
                     {"tolerance", c.tolerance},
                     {"pass", c.pass}});
  }
  j = {{"pass", r.pass}, {"n", r.n}, {"samples", r.samples}, {"limit_draws", r.limit_draws}, {"ranks", ranks}};
}

void to_json(nlohmann::json& j, const OffdiagReport& r) {
  j = {{"pass", r.pass},
       {"n_values", r.n_values},
       {"medians", r.medians},
       {"decreasing", r.decreasing},
       {"threshold", r.threshold}};
}

void to_json(nlohmann::json& j, const Ma1Report& r) {
  j = {{"pass", r.pass},
       {"applicable", r.applicable},
       {"n", r.n},
       {"samples", r.samples},
       {"scale", r.scale},
       {"ks_distance", r.distance},
       {"threshold", r.threshold}};
}

void to_json(nlohmann::json& j, const CheckSuite& suite) {
  j = nlohmann::json::object();
  j["pass"] = suite.pass();
  if (suite.envelope) j["envelope"] = *suite.envelope;
  if (suite.ks) j["ks"] = *suite.ks;
  if (suite.order_stats) j["order_stats"] = *suite.order_stats;
  if (suite.offdiag) j["offdiag"] = *suite.offdiag;
  if (suite.ma1) j["ma1"] = *suite.ma1;
}

}  // namespace hrmlab
