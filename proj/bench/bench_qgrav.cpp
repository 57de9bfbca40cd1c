// Serial reference kernels against their OpenMP versions.
// Thread count follows OMP_NUM_THREADS / FUZZYQRG_THREADS.

#include <benchmark/benchmark.h>

#include "fuzzyqrg/qgrav_kernels.hpp"

using namespace fuzzyqrg::qgrav;

namespace {

QGConfig config() {
  QGConfig cfg;
  cfg.eps = 0.01;
  cfg.L = 10;
  cfg.G = 1;
  cfg.mc_samples = 1u << 19;
  return cfg;
}

const std::vector<MomentSpec> kSpecs = {{1}, {1, 1}, {1, 2}};

void BM_EigenSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::eigen_quadrature_serial(config(), kSpecs, int(st.range(0))));
}
void BM_EigenParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::eigen_quadrature_parallel(config(), kSpecs, int(st.range(0))));
}

void BM_McSerial(benchmark::State& st) {
  std::vector<MatrixObservable> obs = {MatrixObservable::trace(), MatrixObservable::det()};
  for (auto _ : st) benchmark::DoNotOptimize(kernels::mc_serial(config(), obs));
}
void BM_McParallel(benchmark::State& st) {
  std::vector<MatrixObservable> obs = {MatrixObservable::trace(), MatrixObservable::det()};
  for (auto _ : st) benchmark::DoNotOptimize(kernels::mc_parallel(config(), obs));
}

void BM_PartialSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::partial_Zu_serial(1.0, 1.0, int(st.range(0)), 1e-4));
}
void BM_PartialParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::partial_Zu_parallel(1.0, 1.0, int(st.range(0)), 1e-4));
}

}  // namespace

BENCHMARK(BM_EigenSerial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EigenParallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_McSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_McParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PartialSerial)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PartialParallel)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
