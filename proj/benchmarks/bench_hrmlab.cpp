#include <benchmark/benchmark.h>

#include "hrmlab/linear_filter.hpp"
#include "hrmlab/rv_noise.hpp"
#include "hrmlab/spectral.hpp"
#include "hrmlab/trial.hpp"

namespace {

using namespace hrmlab;

const FilterSpec kFilter{CoefficientSequence({1.0, 0.5}), CoefficientSequence({1.0, 0.5}), 0.9};
const TailModel kModel = TailModel::pareto_symmetric(1.5);

void BM_SampleNoise(benchmark::State& state) {
  const auto p = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(sample_noise(kModel, {0, p}, {0, 1000}, 7));
  state.SetItemsProcessed(state.iterations() * p * 1000);
}
BENCHMARK(BM_SampleNoise)->Arg(100)->Arg(400);

void BM_BuildXhat(benchmark::State& state) {
  const auto p = state.range(0);
  const auto noise = sample_noise(kModel, xhat_noise_rows(kFilter, p), xhat_noise_cols(kFilter, 1000), 7);
  for (auto _ : state) benchmark::DoNotOptimize(build_xhat(noise, kFilter, p, 1000));
}
BENCHMARK(BM_BuildXhat)->Arg(100)->Arg(400);

struct Instance {
  Eigen::MatrixXd xhat;
  CenteringSpec centering;
};

Instance make_instance(std::int64_t p) {
  const TailModel model = TailModel::pareto_symmetric(2.5);
  const auto noise = sample_noise(model, xhat_noise_rows(kFilter, p), xhat_noise_cols(kFilter, 1000), 11);
  return {build_xhat(noise, kFilter, p, 1000), {5.0, build_H(kFilter.theta, p), 1000}};
}

// Forms S, then runs Lanczos on it.
void BM_NormDense(benchmark::State& state) {
  const auto inst = make_instance(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_norm(centered_covariance(inst.xhat, inst.centering)));
}
BENCHMARK(BM_NormDense)->Arg(50)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

// Lanczos on x -> X-hat (X-hat^T x) - n mu H (H^T x) without forming S.
void BM_NormMatrixFree(benchmark::State& state) {
  const auto inst = make_instance(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_norm(CovarianceOperator(inst.xhat, inst.centering)));
}
BENCHMARK(BM_NormMatrixFree)->Arg(50)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_Trial(benchmark::State& state) {
  const EnsembleSpec spec{TailModel::pareto_symmetric(1.2), kFilter, state.range(0), 1000, 3};
  for (auto _ : state) benchmark::DoNotOptimize(run_trial(spec));
}
BENCHMARK(BM_Trial)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
