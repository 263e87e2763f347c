#include "hrmlab/rv_noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "hrmlab/rng.hpp"

namespace hrmlab {

namespace {

bool is_pareto(TailFamily family) { return family != TailFamily::student_t; }

// P(Y > y) for the uncentered two-sided Pareto law with right weight q.
double pareto_upper(double q, double alpha, double scale, double y) {
  if (y >= scale) return q * std::pow(scale / y, alpha);
  if (y >= -scale) return q;
  return q + (1.0 - q) * (1.0 - std::pow(scale / -y, alpha));
}

double pareto_density(double q, double alpha, double scale, double y) {
  const double ay = std::abs(y);
  if (ay < scale) return 0.0;
  const double weight = y > 0 ? q : 1.0 - q;
  return weight * alpha * std::pow(scale, alpha) * std::pow(ay, -alpha - 1.0);
}

double shift_of(const TailModel& model) {
  if (!model.centered) return 0.0;
  return model.raw_mean().value_or(0.0);
}

// P(Y > y) for the uncentered law.
double raw_upper(const TailModel& model, double y) {
  if (is_pareto(model.family)) return pareto_upper(model.q, model.alpha, model.scale, y);
  const boost::math::students_t dist(model.alpha);
  return boost::math::cdf(boost::math::complement(dist, y / model.scale));
}

// P(Y < y) for the uncentered law.
double raw_lower(const TailModel& model, double y) {
  if (is_pareto(model.family)) return pareto_upper(1.0 - model.q, model.alpha, model.scale, -y);
  const boost::math::students_t dist(model.alpha);
  return boost::math::cdf(dist, y / model.scale);
}

double raw_density(const TailModel& model, double y) {
  if (is_pareto(model.family)) return pareto_density(model.q, model.alpha, model.scale, y);
  const boost::math::students_t dist(model.alpha);
  return boost::math::pdf(dist, y / model.scale) / model.scale;
}

// Integral of z^2 f_Z(z) over [-cutoff, cutoff], split at the density's
// kinks and on a geometric grid so the adaptive rule sees smooth pieces.
double quadrature_second_moment(const TailModel& model, double cutoff) {
  const double shift = shift_of(model);
  auto integrand = [&](double z) { return z * z * raw_density(model, z + shift); };

  std::vector<double> points{-cutoff, 0.0, cutoff};
  for (double kink : {model.scale - shift, -model.scale - shift}) {
    if (std::abs(kink) < cutoff) points.push_back(kink);
  }
  for (double g = model.scale; g < cutoff; g *= 4.0) {
    points.push_back(g);
    points.push_back(-g);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  double total = 0.0;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, points[k], points[k + 1],
                                                                           15, 1e-12);
  }
  return total;
}

}  // namespace

std::string to_string(const IndexRange& range) {
  return "[" + std::to_string(range.begin) + ", " + std::to_string(range.end) + ")";
}

std::string_view to_string(TailFamily family) {
  switch (family) {
    case TailFamily::pareto_symmetric: return "pareto_symmetric";
    case TailFamily::pareto_positive: return "pareto_positive";
    case TailFamily::pareto_skewed: return "pareto_skewed";
    case TailFamily::student_t: return "student_t";
  }
  return "unknown";
}

TailFamily tail_family_from_string(std::string_view name) {
  for (auto family : {TailFamily::pareto_symmetric, TailFamily::pareto_positive, TailFamily::pareto_skewed,
                      TailFamily::student_t}) {
    if (to_string(family) == name) return family;
  }
  throw std::invalid_argument("unknown tail family '" + std::string(name) + "'");
}

TailModel TailModel::pareto_symmetric(double alpha, double scale) {
  return {TailFamily::pareto_symmetric, alpha, 0.5, scale, false};
}

TailModel TailModel::pareto_positive(double alpha, double scale) {
  return {TailFamily::pareto_positive, alpha, 1.0, scale, false};
}

TailModel TailModel::pareto_skewed(double alpha, double q, double scale) {
  return {TailFamily::pareto_skewed, alpha, q, scale, false};
}

TailModel TailModel::student_t(double alpha, double scale) {
  return {TailFamily::student_t, alpha, 0.5, scale, false};
}

void TailModel::validate() const {
  if (!(alpha > 0.0 && alpha < 4.0)) {
    throw std::invalid_argument("tail index alpha must lie in (0, 4), got " + std::to_string(alpha));
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("scale must be positive and finite");
  }
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("tail balance q must lie in [0, 1]");
  if ((family == TailFamily::pareto_symmetric || family == TailFamily::student_t) && q != 0.5) {
    throw std::invalid_argument(std::string(to_string(family)) + " requires q = 1/2");
  }
  if (family == TailFamily::pareto_positive && q != 1.0) {
    throw std::invalid_argument("pareto_positive requires q = 1");
  }
  if (centered && alpha <= 1.0) {
    throw std::invalid_argument("centering needs a finite mean (alpha > 1)");
  }
}

std::optional<double> TailModel::raw_mean() const {
  if (alpha <= 1.0) return std::nullopt;
  if (family == TailFamily::student_t) return 0.0;
  return (2.0 * q - 1.0) * alpha * scale / (alpha - 1.0);
}

bool TailModel::has_zero_mean() const {
  const auto mean = raw_mean();
  if (!mean) return false;
  return centered || *mean == 0.0;
}

void to_json(nlohmann::json& j, const TailModel& model) {
  j = nlohmann::json{{"family", std::string(to_string(model.family))},
                     {"alpha", model.alpha},
                     {"q", model.q},
                     {"scale", model.scale}};
  if (model.centered) j["centered"] = true;
}

void from_json(const nlohmann::json& j, TailModel& model) {
  model.family = tail_family_from_string(j.at("family").get<std::string>());
  model.alpha = j.at("alpha").get<double>();
  const double default_q = model.family == TailFamily::pareto_positive ? 1.0 : 0.5;
  model.q = j.value("q", default_q);
  model.scale = j.value("scale", 1.0);
  model.centered = j.value("centered", false);
  model.validate();
}

double OffsetMatrix::at(std::int64_t i, std::int64_t t) const {
  if (!rows().contains(i) || !cols().contains(t)) {
    throw std::out_of_range("logical index (" + std::to_string(i) + ", " + std::to_string(t) +
                            ") outside rows " + to_string(rows()) + " x cols " + to_string(cols()));
  }
  return values(i - row_offset, t - col_offset);
}

double draw_noise(const TailModel& model, std::uint64_t seed, std::int64_t i, std::int64_t t) {
  const auto u = rng::uniform_pair(seed, rng::Stream::noise, static_cast<std::uint32_t>(i),
                                   static_cast<std::uint32_t>(t));
  double value = 0.0;
  if (is_pareto(model.family)) {
    const double magnitude = model.scale * std::pow(u.first, -1.0 / model.alpha);
    value = u.second < model.q ? magnitude : -magnitude;
  } else {
    const boost::math::students_t dist(model.alpha);
    value = model.scale * boost::math::quantile(dist, u.first);
  }
  return value - shift_of(model);
}

NoisePanel sample_noise(const TailModel& model, IndexRange rows, IndexRange cols, std::uint64_t seed) {
  model.validate();
  if (rows.empty() || cols.empty()) {
    throw std::invalid_argument("noise rectangle must be nonempty, got rows " + to_string(rows) + " x cols " +
                                to_string(cols));
  }
  constexpr std::int64_t kLimit = std::numeric_limits<std::int32_t>::max();
  for (std::int64_t bound : {rows.begin, rows.end, cols.begin, cols.end}) {
    if (bound > kLimit || bound < -kLimit) throw std::invalid_argument("noise index exceeds 32-bit range");
  }

  NoisePanel panel;
  panel.seed = seed;
  panel.data.row_offset = rows.begin;
  panel.data.col_offset = cols.begin;
  panel.data.values.resize(rows.size(), cols.size());
  const double shift = shift_of(model);
  const double inv_alpha = 1.0 / model.alpha;

  if (is_pareto(model.family)) {
    for (std::int64_t c = 0; c < cols.size(); ++c) {
      for (std::int64_t r = 0; r < rows.size(); ++r) {
        const auto u = rng::uniform_pair(seed, rng::Stream::noise, static_cast<std::uint32_t>(rows.begin + r),
                                         static_cast<std::uint32_t>(cols.begin + c));
        const double magnitude = model.scale * std::pow(u.first, -inv_alpha);
        panel.data.values(r, c) = (u.second < model.q ? magnitude : -magnitude) - shift;
      }
    }
  } else {
    for (std::int64_t c = 0; c < cols.size(); ++c) {
      for (std::int64_t r = 0; r < rows.size(); ++r) {
        panel.data.values(r, c) = draw_noise(model, seed, rows.begin + r, cols.begin + c);
      }
    }
  }
  return panel;
}

double tail_probability(const TailModel& model, double x) {
  if (x < 0.0) return 1.0;
  const double shift = shift_of(model);
  return raw_upper(model, shift + x) + raw_lower(model, shift - x);
}

double right_tail_probability(const TailModel& model, double x) { return raw_upper(model, shift_of(model) + x); }

double norming_constant(const TailModel& model, double m) {
  model.validate();
  if (!(m >= 1.0)) throw std::invalid_argument("norming_constant requires m >= 1");

  if (!model.centered) {
    if (is_pareto(model.family)) return model.scale * std::pow(m, 1.0 / model.alpha);
    const boost::math::students_t dist(model.alpha);
    return model.scale * boost::math::quantile(boost::math::complement(dist, 0.5 / m));
  }

  // Shifted laws have no closed form; solve m P(|Z| > a) = 1 by bracketing.
  auto excess = [&](double a) { return m * tail_probability(model, a) - 1.0; };
  if (excess(0.0) <= 0.0) return 0.0;
  double hi = model.scale * std::pow(m, 1.0 / model.alpha) + std::abs(shift_of(model));
  while (excess(hi) > 0.0) hi *= 2.0;
  std::uintmax_t max_iter = 500;
  const auto bracket = boost::math::tools::toms748_solve(excess, 0.0, hi, boost::math::tools::eps_tolerance<double>(50),
                                                         max_iter);
  return 0.5 * (bracket.first + bracket.second);
}

double truncated_second_moment(const TailModel& model, double cutoff) {
  model.validate();
  if (!(cutoff > 0.0)) throw std::invalid_argument("truncation cutoff must be positive");
  if (is_pareto(model.family) && !model.centered) {
    const double s = model.scale;
    if (cutoff <= s) return 0.0;
    const double log_ratio = std::log(cutoff / s);
    const double exponent = (2.0 - model.alpha) * log_ratio;
    if (exponent == 0.0) return model.alpha * s * s * log_ratio;
    return model.alpha * s * s * std::expm1(exponent) / (2.0 - model.alpha);
  }
  return quadrature_second_moment(model, cutoff);
}

std::optional<double> second_moment(const TailModel& model) {
  model.validate();
  if (model.alpha <= 2.0) return std::nullopt;
  const double s2 = model.scale * model.scale;
  const double raw = model.alpha * s2 / (model.alpha - 2.0);
  if (model.family == TailFamily::student_t) return raw;
  const double shift = shift_of(model);
  return raw - shift * shift;
}

}  // namespace hrmlab
