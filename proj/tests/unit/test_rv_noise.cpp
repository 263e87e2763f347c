#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hrmlab/rv_noise.hpp"

namespace hrmlab {
namespace {

double binomial_se(double prob, double count) { return std::sqrt(prob * (1.0 - prob) / count); }

std::vector<TailModel> pareto_models() {
  return {TailModel::pareto_symmetric(1.5, 2.0), TailModel::pareto_positive(0.8),
          TailModel::pareto_skewed(2.5, 0.3, 0.5)};
}

std::vector<TailModel> all_models() {
  auto models = pareto_models();
  models.push_back(TailModel::student_t(3.0));
  models.push_back(TailModel::student_t(1.2, 2.0));
  TailModel centered = TailModel::pareto_positive(1.5);
  centered.centered = true;
  models.push_back(centered);
  TailModel skew_centered = TailModel::pareto_skewed(2.5, 0.8);
  skew_centered.centered = true;
  models.push_back(skew_centered);
  return models;
}

TEST(TailModel, RejectsInconsistentParameters) {
  EXPECT_THROW(TailModel::pareto_symmetric(0.0).validate(), std::invalid_argument);
  EXPECT_THROW(TailModel::pareto_symmetric(1.0, -1.0).validate(), std::invalid_argument);
  EXPECT_THROW(TailModel::pareto_skewed(1.5, 1.2).validate(), std::invalid_argument);
  TailModel bad = TailModel::pareto_positive(0.9);
  bad.centered = true;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(TailModel, JsonRoundTrip) {
  const TailModel m = TailModel::pareto_skewed(1.7, 0.25, 3.0);
  const nlohmann::json j = m;
  EXPECT_EQ(j.get<TailModel>(), m);
  EXPECT_THROW((nlohmann::json{{"family", "cauchy"}, {"alpha", 1.0}}.get<TailModel>()), std::invalid_argument);
}

TEST(Sampler, PositiveParetoStaysOnSupport) {
  const auto panel = sample_noise(TailModel::pareto_positive(1.0), {0, 200}, {0, 200}, 42);
  EXPECT_GE(panel.data.values.minCoeff(), 1.0);
}

TEST(Sampler, HeavyTailFractionMatchesExactTail) {
  const auto panel = sample_noise(TailModel::pareto_symmetric(0.5), {0, 1000}, {0, 1000}, 5);
  const double frac = (panel.data.values.array().abs() > 100.0).cast<double>().mean();
  EXPECT_NEAR(frac, 0.1, 3.0 * binomial_se(0.1, 1e6));
}

TEST(Sampler, OverlappingRectanglesAgree) {
  const TailModel m = TailModel::student_t(2.5);
  const auto small = sample_noise(m, {0, 10}, {0, 10}, 99);
  const auto large = sample_noise(m, {0, 20}, {0, 20}, 99);
  EXPECT_EQ(small.data.values, large.data.values.topLeftCorner(10, 10));
  const auto shifted = sample_noise(m, {-5, 5}, {3, 8}, 99);
  for (std::int64_t i = 0; i < 5; ++i) {
    for (std::int64_t t = 3; t < 8; ++t) EXPECT_EQ(shifted.at(i, t), small.at(i, t));
  }
}

TEST(Sampler, BitReproducible) {
  for (const auto& m : all_models()) {
    const auto a = sample_noise(m, {-3, 40}, {-7, 30}, 1234);
    const auto b = sample_noise(m, {-3, 40}, {-7, 30}, 1234);
    EXPECT_EQ(a.data.values, b.data.values);
    EXPECT_EQ(a.at(-3, -7), draw_noise(m, 1234, -3, -7));
  }
}

TEST(Sampler, OutOfRangeAccessThrows) {
  const auto panel = sample_noise(TailModel::pareto_symmetric(1.5), {0, 3}, {0, 3}, 1);
  EXPECT_THROW((void)panel.at(3, 0), std::out_of_range);
  EXPECT_THROW((void)panel.at(0, -1), std::out_of_range);
}

TEST(Sampler, EmpiricalTailMatchesClosedFormOnGrid) {
  for (const auto& m : pareto_models()) {
    const auto panel = sample_noise(m, {0, 1000}, {0, 1000}, 2024);
    const Eigen::ArrayXXd absz = panel.data.values.array().abs();
    for (double factor : {1.0, 1.5, 3.0, 10.0, 50.0}) {
      const double x = factor * m.scale;
      const double exact = std::pow(m.scale / x, m.alpha);
      const double frac = (absz > x).cast<double>().mean();
      const double se = binomial_se(exact, 1e6);
      EXPECT_NEAR(frac, exact, 4.0 * se + 1e-15) << to_string(m.family) << " x=" << x;
      EXPECT_DOUBLE_EQ(tail_probability(m, x), exact);
    }
  }
}

TEST(Sampler, SignSplitMatchesBalance) {
  const TailModel m = TailModel::pareto_skewed(1.0, 0.3);
  const auto panel = sample_noise(m, {0, 1000}, {0, 1000}, 77);
  const Eigen::ArrayXXd z = panel.data.values.array();
  const double big = (z.abs() > 10.0).cast<double>().sum();
  const double right = (z > 10.0).cast<double>().sum();
  EXPECT_NEAR(right / big, 0.3, 4.0 * binomial_se(0.3, big));
  EXPECT_DOUBLE_EQ(right_tail_probability(m, 10.0), 0.3 * 0.1);
}

TEST(NormingConstant, ExactPareto) {
  EXPECT_DOUBLE_EQ(norming_constant(TailModel::pareto_symmetric(2.0), 100.0), 10.0);
  for (const auto& m : pareto_models()) EXPECT_DOUBLE_EQ(norming_constant(m, 1.0), m.scale);
}

TEST(NormingConstant, SolvesTailEquationForEveryFamily) {
  for (const auto& m : all_models()) {
    for (double count : {2.0, 17.0, 1e3, 1e5, 1e8}) {
      const double a = norming_constant(m, count);
      EXPECT_NEAR(count * tail_probability(m, a), 1.0, 1e-9) << to_string(m.family) << " m=" << count;
    }
  }
}

TEST(NormingConstant, StudentMatchesEmpiricalQuantile) {
  // Independent sampler: std::student_t_distribution, 10^7 draws.
  std::mt19937_64 gen(314159);
  std::student_t_distribution<double> t3(3.0);
  std::vector<double> absz(10'000'000);
  for (auto& v : absz) v = std::abs(t3(gen));
  const std::size_t idx = absz.size() - absz.size() / 1000;
  std::nth_element(absz.begin(), absz.begin() + static_cast<std::ptrdiff_t>(idx), absz.end());
  const double empirical = absz[idx];
  const double a = norming_constant(TailModel::student_t(3.0), 1000.0);
  EXPECT_NEAR(a / empirical, 1.0, 0.01);
}

TEST(TruncatedMoment, ClosedFormValues) {
  const TailModel m = TailModel::pareto_positive(2.0);
  EXPECT_EQ(truncated_second_moment(m, 1.0), 0.0);
  EXPECT_NEAR(truncated_second_moment(m, std::exp(1.0)), 2.0, 1e-14);
  EXPECT_EQ(truncated_second_moment(m, 0.5), 0.0);
}

TEST(TruncatedMoment, MatchesMonteCarloAtLargeCutoff) {
  // Truncation keeps Var(Z^2 1{|Z| <= cutoff}) finite, so the standard error is meaningful.
  const double cutoff = 1e3;
  std::mt19937_64 gen(2718);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::student_t_distribution<double> t3(3.0);
  struct Case {
    TailModel model;
    std::function<double()> draw;
  };
  const std::vector<Case> cases{
      {TailModel::pareto_symmetric(3.0), [&] { return std::pow(1.0 - unif(gen), -1.0 / 3.0); }},
      {TailModel::student_t(3.0, 2.0), [&] { return 2.0 * t3(gen); }},
  };
  for (const auto& c : cases) {
    const std::size_t count = 10'000'000;
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t s = 0; s < count; ++s) {
      const double z = c.draw();
      const double v = std::abs(z) <= cutoff ? z * z : 0.0;
      sum += v;
      sum_sq += v * v;
    }
    const double mean = sum / count;
    const double se = std::sqrt((sum_sq / count - mean * mean) / count);
    EXPECT_NEAR(truncated_second_moment(c.model, cutoff), mean, 3.0 * se) << to_string(c.model.family);
    // The truncated moment approaches the full second moment from below.
    EXPECT_LT(truncated_second_moment(c.model, cutoff), *second_moment(c.model));
    EXPECT_NEAR(truncated_second_moment(c.model, 1e9), *second_moment(c.model), 1e-6 * *second_moment(c.model));
  }
}

TEST(SecondMoment, FiniteAndInfiniteCases) {
  EXPECT_NEAR(*second_moment(TailModel::pareto_positive(3.0)), 3.0, 1e-14);
  EXPECT_FALSE(second_moment(TailModel::pareto_symmetric(1.5)).has_value());
  EXPECT_FALSE(second_moment(TailModel::pareto_symmetric(2.0)).has_value());
  const auto t3 = second_moment(TailModel::student_t(3.0));
  ASSERT_TRUE(t3.has_value());
  EXPECT_NEAR(*t3, 3.0, 1e-12);  // nu / (nu - 2)
}

TEST(SecondMoment, StudentMatchesMonteCarlo) {
  std::mt19937_64 gen(161803);
  std::student_t_distribution<double> t3(3.0);
  double sum = 0.0;
  const std::size_t count = 10'000'000;
  for (std::size_t s = 0; s < count; ++s) {
    const double z = t3(gen);
    sum += z * z;
  }
  EXPECT_NEAR(*second_moment(TailModel::student_t(3.0)) / (sum / count), 1.0, 0.01);
}

TEST(SecondMoment, CenteringRemovesSquaredMean) {
  TailModel m = TailModel::pareto_positive(3.0);
  m.centered = true;
  // E Z = 3/2, E Z^2 = 3.
  EXPECT_NEAR(*second_moment(m), 3.0 - 2.25, 1e-12);
  EXPECT_TRUE(m.has_zero_mean());
  EXPECT_FALSE(TailModel::pareto_positive(3.0).has_zero_mean());
}

TEST(Sampler, CenteredModelHasZeroSampleMean) {
  TailModel m = TailModel::pareto_positive(3.0);
  m.centered = true;
  const auto panel = sample_noise(m, {0, 1000}, {0, 1000}, 8);
  EXPECT_NEAR(panel.data.values.mean(), 0.0, 0.01);
}

}  // namespace
}  // namespace hrmlab
