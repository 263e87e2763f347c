// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
// Batch criteria load the experiment configs shipped under configs/ so the
// CLI examples and this suite cannot drift apart; each config is first
// checked against the parameters the criterion prescribes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "hrmlab/checks.hpp"
#include "hrmlab/config.hpp"
#include "hrmlab/limit_law.hpp"
#include "hrmlab/report.hpp"
#include "hrmlab/spectral.hpp"
#include "hrmlab/trial.hpp"
#include "hrmlab/validation.hpp"
#include "oracles.hpp"

#ifndef HRMLAB_CONFIG_DIR
#error "HRMLAB_CONFIG_DIR must point at the configs directory"
#endif

namespace {

using namespace hrmlab;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

ExperimentConfig load(const char* name) { return load_config(std::string(HRMLAB_CONFIG_DIR) + "/" + name); }

// Collects failed expectations for one criterion.
class Expect {
 public:
  void that(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void equal(double got, double want, const std::string& what) {
    that(got == want, what + ": got " + fmt(got) + ", want " + fmt(want));
  }
  void near(double got, double want, double rel, const std::string& what) {
    that(std::abs(got - want) <= rel * std::abs(want), what + ": got " + fmt(got) + ", want " + fmt(want));
  }
  [[nodiscard]] bool ok() const { return failures_.empty(); }
  [[nodiscard]] std::string first() const { return failures_.empty() ? "" : failures_.front(); }
  [[nodiscard]] std::size_t count() const { return failures_.size(); }

  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
  }

 private:
  std::vector<std::string> failures_;
};

std::string fmt(double v) { return Expect::fmt(v); }

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

FilterSpec filter(std::vector<double> c, std::vector<double> theta) {
  return {CoefficientSequence(std::move(c)), CoefficientSequence(std::move(theta)), 0.9};
}

Outcome exact_algebra() {
  const auto start = Clock::now();
  Expect e;
  std::size_t cases = 0;
  auto tick = [&cases] { ++cases; };

  // build_H
  {
    const Eigen::MatrixXd h = build_H(CoefficientSequence::spike(), 2).to_dense();
    bool shape = h.rows() == 2 && h.cols() == 6;
    for (Eigen::Index i = 0; shape && i < 2; ++i) {
      for (Eigen::Index j = 0; j < 6; ++j) shape = shape && h(i, j) == (j - i == 2 ? 1.0 : 0.0);
    }
    e.that(shape, "build_H spike p=2");
    tick();
    for (Eigen::Index p : {1, 3, 8}) {
      const Eigen::MatrixXd hp = build_H(CoefficientSequence::spike(), p).to_dense();
      e.that(hp * hp.transpose() == Eigen::MatrixXd::Identity(p, p), "H H^T identity for spike");
      tick();
    }
    const CoefficientSequence ma({1.0, 0.5});
    const Eigen::MatrixXd h3 = build_H(ma, 3).to_dense();
    bool brute = h3.rows() == 3 && h3.cols() == 9;
    for (Eigen::Index i = 1; brute && i <= 3; ++i) {
      for (Eigen::Index j = 1; j <= 9; ++j) {
        const Eigen::Index gap = j - i;
        const double want = gap >= 0 && gap <= 6 ? ma.at(3 - gap) : 0.0;
        brute = brute && h3(i - 1, j - 1) == want;
      }
    }
    e.that(brute, "build_H theta=(1,0.5) p=3 vs brute force");
    tick();
  }

  // mu_x_alpha
  e.equal(mu_x_alpha(TailModel::pareto_symmetric(1.2), CoefficientSequence({1.0, 0.5}), 10.0), 0.0, "mu alpha=1.2");
  e.near(mu_x_alpha(TailModel::pareto_positive(3.0), CoefficientSequence({1.0}), 10.0), 3.0, 1e-12, "mu alpha=3");
  e.near(mu_x_alpha(TailModel::pareto_positive(2.0), CoefficientSequence({1.0, 1.0}), std::exp(1.0)), 4.0, 1e-12,
         "mu alpha=2 truncated");
  cases += 3;

  // beta_limit
  e.that(std::isinf(beta_limit(0.8)), "beta_limit(0.8) infinite");
  e.equal(beta_limit(1.5), 1.0, "beta_limit(1.5)");
  e.near(beta_limit(3.5), 0.5 / 6.5, 1e-12, "beta_limit(3.5)");
  cases += 3;

  // bound_constants
  {
    const auto spike = bound_constants(filter({1.0}, {1.0}), 1.5);
    e.equal(spike.lower_scale, 1.0, "spike lower");
    e.equal(spike.upper_scale, 1.0, "spike upper");
    const auto ma = bound_constants(filter({1.0}, {1.0, 0.5}), 1.5);
    e.equal(ma.lower_scale, 1.0, "theta=(1,0.5) lower");
    e.equal(ma.upper_scale, 1.5, "theta=(1,0.5) upper");
    for (double th : {0.3, -0.9, 1.0}) {
      const auto b = bound_constants(filter({1.0, 0.5}, {1.0, th}), 1.5);
      e.near(b.lower_scale, std::max(1.0, th * th) * 1.25, 1e-12, "MA(1) lower");
      e.near(b.upper_scale, (1.0 + std::abs(th)) * 1.25, 1e-12, "MA(1) upper, |theta| <= 1");
    }
    cases += 10;
  }

  // ma1_constants
  e.that(ma1_constants(0.0) == std::make_pair(1.0, 1.0), "ma1_constants(0)");
  e.that(ma1_constants(1.0) == std::make_pair(1.0, 2.0), "ma1_constants(1)");
  e.that(ma1_constants(2.0) == std::make_pair(4.0, 6.0), "ma1_constants(2)");
  cases += 3;

  // hdh_matrix
  {
    const double th = 0.6;
    const BandedMatrix h(2, 3, 2, {0, 1}, {th, 1.0, th, 1.0});
    const Eigen::MatrixXd m = hdh_matrix(h, (Eigen::VectorXd(3) << 1, 2, 3).finished()).dense();
    e.near(m(0, 0), th * th + 2.0, 1e-12, "HDH^T (0,0)");
    e.near(m(0, 1), 2.0 * th, 1e-12, "HDH^T (0,1)");
    e.near(m(1, 1), 2.0 * th * th + 3.0, 1e-12, "HDH^T (1,1)");
    const Eigen::VectorXd d = Eigen::VectorXd::LinSpaced(9, 1.0, 9.0);
    e.that(hdh_matrix(build_H(CoefficientSequence::spike(), 3), d).dense() ==
               Eigen::MatrixXd(d.segment(3, 3).asDiagonal()),
           "HDH^T spike selects diagonal block");
    std::mt19937_64 gen(1);
    std::normal_distribution<double> normal;
    for (int rep = 0; rep < 50; ++rep) {
      const CoefficientSequence theta({normal(gen), normal(gen), normal(gen)}, -1);
      const Eigen::Index p = 2 + rep % 6;
      Eigen::VectorXd dd(3 * p);
      for (auto& x : dd) x = std::abs(normal(gen));
      const BandedMatrix hb = build_H(theta, p);
      const Eigen::MatrixXd hd = hb.to_dense();
      const Eigen::MatrixXd triple = hd * dd.asDiagonal() * hd.transpose();
      const double scale = 1.0 + triple.cwiseAbs().maxCoeff();
      e.that((hdh_matrix(hb, dd).dense() - triple).cwiseAbs().maxCoeff() <= 1e-12 * scale,
             "HDH^T vs triple product");
    }
    cases += 54;
  }

  const double elapsed = seconds_since(start);
  e.that(elapsed < 1.0, "runtime " + fmt(elapsed) + " s exceeds 1 s");
  std::ostringstream os;
  os << cases << " cases, " << e.count() << " failed, " << fmt(elapsed) << " s";
  if (!e.ok()) os << "; first: " << e.first();
  return {e.ok(), os.str()};
}

Outcome spectral_oracle() {
  const auto start = Clock::now();
  std::mt19937_64 gen(20240601);
  std::uniform_int_distribution<int> dim(2, 50);
  double worst = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const SymMatrix m(oracle::random_symmetric(gen, dim(gen), rep % 2 == 0));
    const double want = oracle::dense_norm(m.dense());
    worst = std::max(worst, std::abs(spectral_norm(m, 1e-8) - want) / want);
  }
  const double elapsed = seconds_since(start);
  const bool pass = worst <= 1e-8 && elapsed < 30.0;
  return {pass, "200 matrices, worst relative error " + fmt(worst) + " (limit 1e-08), " + fmt(elapsed) + " s"};
}

Outcome config_mismatch(const std::string& what) { return {false, "config does not match criterion: " + what}; }

Outcome single_spike_law() {
  const auto config = load("single_spike.json");
  if (config.model.family != TailFamily::pareto_symmetric || config.model.alpha != 1.5 ||
      config.filter.c != CoefficientSequence({1.0}) || config.filter.theta != CoefficientSequence({1.0}) ||
      config.n_values != std::vector<std::int64_t>{1000} || config.rule.p_of_n(1000) != 100 ||
      config.replicates != 1000) {
    return config_mismatch("single_spike.json");
  }
  const auto batch = run_batch(config, workers());
  const auto report = ks_check(batch);
  return {report.applicable && report.distance_to_upper <= 0.10,
          "KS distance " + fmt(report.distance_to_upper) + " (limit 0.10), " + std::to_string(report.samples) +
              " replicates, n=1000, p=100"};
}

bool is_envelope_config(const ExperimentConfig& config) {
  return config.model.family == TailFamily::pareto_symmetric && config.model.alpha == 1.2 &&
         config.filter.c == CoefficientSequence({1.0, 0.5}) && config.filter.theta == CoefficientSequence({1.0, 0.5}) &&
         config.filter.delta == 0.9 && config.rule.beta == 0.9 && config.rule.p_of_n(1000) == 400 &&
         config.n_values == std::vector<std::int64_t>{1000} && config.replicates == 500 &&
         config.checks.slack == 0.03 && config.checks.z == 4.0;
}

Outcome envelope_containment(std::string& csv_out) {
  const auto config = load("envelope.json");
  if (!is_envelope_config(config)) return config_mismatch("envelope.json");
  if (!validate(config).pass()) return {false, "hypotheses rejected: " + validate(config).summary()};
  const auto batch = run_batch(config, workers());
  csv_out = trials_csv(batch);
  const auto report = envelope_check(batch);
  std::size_t failed = 0;
  std::string positions;
  for (const auto& pt : report.points) {
    failed += pt.pass ? 0 : 1;
    if (!positions.empty()) positions += ' ';
    positions += fmt(pt.position.value_or(0.0));
  }
  return {report.pass, std::to_string(report.points.size() - failed) + "/" + std::to_string(report.points.size()) +
                           " grid points inside (slack 0.03, z=4), 500 replicates, p=400; position in envelope: " +
                           positions};
}

Outcome offdiag_vanishing() {
  const auto config = load("offdiag.json");
  if (config.model.alpha != 1.2 || config.filter.c != CoefficientSequence({1.0, 0.5}) ||
      config.filter.theta != CoefficientSequence({1.0}) || config.rule.beta != 0.9 || config.rule.p_max != 400 ||
      config.n_values != std::vector<std::int64_t>{200, 500, 1000, 2000} || config.replicates != 100) {
    return config_mismatch("offdiag.json");
  }
  const auto report = offdiag_trend_check(run_batch(config, workers()));
  std::string medians;
  for (double m : report.medians) medians += (medians.empty() ? "" : " ") + fmt(m);
  return {report.decreasing && report.medians.back() < 0.15,
          "medians at n=200,500,1000,2000: " + medians + (report.decreasing ? " (decreasing)" : " (NOT decreasing)") +
              ", limit 0.15 at n=2000"};
}

Outcome order_statistics() {
  const auto config = load("order_stats.json");
  if (config.model.alpha != 1.5 || config.filter.theta != CoefficientSequence({1.0, 0.5}) ||
      config.checks.top_k != 3 || config.replicates != 500 || config.n_values != std::vector<std::int64_t>{1000}) {
    return config_mismatch("order_stats.json");
  }
  const auto report = order_stat_check(run_batch(config, workers()));
  std::string ranks;
  for (const auto& r : report.ranks) {
    ranks += " rank" + std::to_string(r.rank) + " " + fmt(r.empirical.median) + " vs " + fmt(r.limit.median) +
             " (tol " + fmt(r.tolerance) + ")";
  }
  return {report.pass, "medians empirical vs limit:" + ranks};
}

Outcome moving_average_law() {
  const auto config = load("ma1.json");
  if (config.filter.theta != CoefficientSequence({1.0, 0.7}) || config.replicates != 500) {
    return config_mismatch("ma1.json");
  }
  const auto report = ma1_check(run_batch(config, workers()));
  return {report.applicable && report.distance <= 0.10,
          "KS distance " + fmt(report.distance) + " to Frechet with scale " + fmt(report.scale) + " (limit 0.10)"};
}

Outcome determinism(const std::string& first_csv) {
  if (first_csv.empty()) return {false, "envelope batch did not produce trials.csv"};
  const auto config = load("envelope.json");
  const std::string again = trials_csv(run_batch(config, workers()));
  return {again == first_csv, std::to_string(first_csv.size()) + " bytes, " +
                                  (again == first_csv ? "byte-identical on rerun" : "DIFFERS on rerun")};
}

bool report(const char* id, const char* name, const std::function<Outcome()>& run) {
  const auto start = Clock::now();
  Outcome outcome;
  try {
    outcome = run();
  } catch (const std::exception& ex) {
    outcome = {false, std::string("exception: ") + ex.what()};
  }
  std::printf("%s [%s] %s: %s [%.1f s]\n", outcome.pass ? "PASS" : "FAIL", id, name, outcome.detail.c_str(),
              seconds_since(start));
  std::fflush(stdout);
  return outcome.pass;
}

}  // namespace

int main() {
  bool all = true;
  std::string envelope_csv;
  all &= report("C1", "exact algebra", exact_algebra);
  all &= report("C2", "spectral norm vs dense eigensolve", spectral_oracle);
  all &= report("C3", "single-spike exact law", single_spike_law);
  all &= report("C4", "envelope containment", [&] { return envelope_containment(envelope_csv); });
  all &= report("C5", "off-diagonal vanishing", offdiag_vanishing);
  all &= report("C6", "order-statistic limit", order_statistics);
  all &= report("C7", "MA(1) diagonal maximum law", moving_average_law);
  all &= report("C8", "determinism of trials.csv", [&] { return determinism(envelope_csv); });
  std::printf("%s\n", all ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
  return all ? 0 : 1;
}
