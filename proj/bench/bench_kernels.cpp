// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "chemodde/chemodde.hpp"

using namespace chemodde;

namespace {

std::vector<double> prefix_of_random_logs(std::size_t n) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> N(0.0, 0.2);
  std::vector<double> g(n);
  for (auto& v : g) v = N(rng);
  return kernels::prefix_sums(g);
}

void BM_WindowSerial(benchmark::State& state) {
  const auto p = prefix_of_random_logs(static_cast<std::size_t>(state.range(0)));
  const long n = state.range(0) - 1;
  for (auto _ : state) benchmark::DoNotOptimize(kernels::window_extrema_serial(p, 51, 51, n));
}

void BM_WindowParallel(benchmark::State& state) {
  const auto p = prefix_of_random_logs(static_cast<std::size_t>(state.range(0)));
  const long n = state.range(0) - 1;
  for (auto _ : state) benchmark::DoNotOptimize(kernels::window_extrema_parallel(p, 51, 51, n));
}

void BM_HalfWindowSerial(benchmark::State& state) {
  const auto p = prefix_of_random_logs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::half_window_sums_serial(p));
}

void BM_HalfWindowParallel(benchmark::State& state) {
  const auto p = prefix_of_random_logs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::half_window_sums_parallel(p));
}

std::vector<InitialHistory> ensemble_inits(int count) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.05, 0.4);
  std::vector<InitialHistory> inits;
  for (int i = 0; i < count; ++i) inits.push_back(InitialHistory::constant(5, U(rng), U(rng)));
  return inits;
}

const ChemostatParams kFig2{1.0 / 8.0, 5, UptakeFunction::monod(1.0, 1.0), InputSignal(Sinusoid{0.25, 500, 0.6})};

void BM_EnsembleSerial(benchmark::State& state) {
  const auto inits = ensemble_inits(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::simulate_ensemble_serial(kFig2, inits, 20000));
}

void BM_EnsembleParallel(benchmark::State& state) {
  const auto inits = ensemble_inits(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::simulate_ensemble_parallel(kFig2, inits, 20000));
}

}  // namespace

BENCHMARK(BM_WindowSerial)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WindowParallel)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HalfWindowSerial)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HalfWindowParallel)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnsembleSerial)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnsembleParallel)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
