#include <benchmark/benchmark.h>

#include <cmath>

#include "paramp/paramp.hpp"

namespace {

const paramp::DerivedParams& params() {
  static const auto d = paramp::derive({1.0, 0.3, std::sqrt(0.05), 1.0});
  return d;
}

void BM_DenseAssembly(benchmark::State& state) {
  const paramp::ModeGrid g(40.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(paramp::output_covariance(params(), g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DenseAssembly)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_StructuredAssembly(benchmark::State& state) {
  const paramp::ModeGrid g(40.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(paramp::output_covariance_structured(params(), g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StructuredAssembly)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_DenseSpectrum(benchmark::State& state) {
  const paramp::ModeGrid g(40.0, static_cast<int>(state.range(0)));
  const auto c = paramp::output_covariance(params(), g);
  for (auto _ : state) benchmark::DoNotOptimize(paramp::symplectic_spectrum(c));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DenseSpectrum)->RangeMultiplier(2)->Range(16, 128)->Complexity()->Unit(benchmark::kMillisecond);

void BM_StructuredSpectrum(benchmark::State& state) {
  const paramp::ModeGrid g(40.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(paramp::structured_spectrum(params(), g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StructuredSpectrum)->RangeMultiplier(4)->Range(16, 8192)->Complexity(benchmark::oN);

void BM_CovarianceAt(benchmark::State& state) {
  const auto c0 = paramp::squeezed_initial_covariance(2.0, params());
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(paramp::covariance_at(t, c0, params()));
    t += 1e-3;
  }
}
BENCHMARK(BM_CovarianceAt);

}  // namespace

BENCHMARK_MAIN();
