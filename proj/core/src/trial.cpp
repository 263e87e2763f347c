#include "hrmlab/trial.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "hrmlab/rng.hpp"
#include "hrmlab/spectral.hpp"
#include "hrmlab/validation.hpp"

namespace hrmlab {

namespace {

bool is_ma1(const CoefficientSequence& theta) {
  return theta.min_lag() == 0 && theta.size() == 2 && theta.at(0) == 1.0;
}

}  // namespace

TrialRecord run_trial(const EnsembleSpec& spec, const TrialOptions& options) {
  const auto& filter = spec.filter;
  const std::int64_t p = spec.p;
  const std::int64_t n = spec.n;

  const IndexRange x_rows = row_process_rows(filter, p);
  const NoisePanel noise = sample_noise(spec.model, x_rows, xhat_noise_cols(filter, n), spec.seed);
  const OffsetMatrix x = build_row_process(noise, filter.c, x_rows, n);
  const Eigen::MatrixXd xhat = build_xhat(noise, filter, p, n);

  TrialRecord rec;
  rec.seed = spec.seed;
  rec.n = n;
  rec.p = p;
  rec.a_np = norming_constant(spec.model, static_cast<double>(n) * static_cast<double>(p));
  rec.mu = mu_x_alpha(spec.model, filter.c, rec.a_np);
  const double a2 = rec.a_np * rec.a_np;

  const CenteringSpec centering{rec.mu, build_H(filter.theta, p), n};
  LanczosOptions lanczos;
  lanczos.rel_tol = options.rel_tol;
  lanczos.seed = rng::mix64(spec.seed);
  rec.scaled_norm = extreme_eigenvalues(CovarianceOperator(xhat, centering), lanczos).norm / a2;
  rec.offdiag_dev = offdiag_deviation(x.values, rec.a_np);

  // Row-filtered centered diagonal: M_i = sum_k theta_k D~_{i-k}.
  const Eigen::VectorXd d_tilde = centered_gram_diag(x.values, rec.mu);
  auto d_at = [&](std::int64_t row) { return d_tilde(row - x_rows.begin); };
  std::vector<double> filtered(static_cast<std::size_t>(p));
  for (std::int64_t i = 1; i <= p; ++i) {
    double acc = 0.0;
    for (std::int64_t k = filter.theta.min_lag(); k <= filter.theta.max_lag(); ++k) {
      acc += filter.theta.at(k) * d_at(i - k);
    }
    filtered[static_cast<std::size_t>(i - 1)] = acc / a2;
  }
  const std::size_t k = std::min(options.top_k, filtered.size());
  std::partial_sort(filtered.begin(), filtered.begin() + static_cast<std::ptrdiff_t>(k), filtered.end(),
                    std::greater<>());
  rec.top.assign(filtered.begin(), filtered.begin() + static_cast<std::ptrdiff_t>(k));

  if (is_ma1(filter.theta)) {
    const double t2 = filter.theta.at(1) * filter.theta.at(1);
    double best = -std::numeric_limits<double>::infinity();
    for (std::int64_t i = 1; i <= p; ++i) best = std::max(best, d_at(i - 1) + t2 * d_at(i));
    rec.ma1_stat = best / a2;
  }
  return rec;
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::int64_t n, std::size_t replicate) {
  const std::uint64_t packed = (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint32_t>(replicate);
  return rng::mix64(rng::mix64(base_seed) ^ packed);
}

std::int64_t TrialBatch::largest_n() const {
  std::int64_t best = 0;
  for (const auto& r : records) best = std::max(best, r.n);
  return best;
}

std::vector<const TrialRecord*> TrialBatch::at_n(std::int64_t n) const {
  std::vector<const TrialRecord*> out;
  for (const auto& r : records) {
    if (r.n == n) out.push_back(&r);
  }
  return out;
}

TrialBatch run_batch(const ExperimentConfig& config, unsigned workers) {
  const ValidationReport report = validate(config);
  if (!report.pass()) throw ValidationError(report);

  std::vector<std::int64_t> sizes = config.n_values;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

  struct Job {
    std::int64_t n;
    std::size_t replicate;
  };
  std::vector<Job> jobs;
  for (auto n : sizes) {
    for (std::size_t r = 0; r < config.replicates; ++r) jobs.push_back({n, r});
  }

  TrialBatch batch;
  batch.config = config;
  batch.records.resize(jobs.size());
  const TrialOptions options{config.checks.top_k, config.rel_tol};

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= jobs.size()) return;
      try {
        const auto& job = jobs[idx];
        auto spec = config.spec_for(job.n, derive_seed(config.seed, job.n, job.replicate));
        batch.records[idx] = run_trial(spec, options);
        batch.records[idx].replicate = job.replicate;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(jobs.size());
      }
    }
  };

  const unsigned count = std::max(1u, workers);
  if (count == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < count; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return batch;
}

}  // namespace hrmlab
