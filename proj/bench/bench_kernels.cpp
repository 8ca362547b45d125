// serial reference vs OpenMP path for the two heavy kernels

#include <benchmark/benchmark.h>

#include "gmc/gmcsim.hpp"
#include "gmc/quadrature.hpp"

using namespace gmc;

static void BM_ordered_integral(benchmark::State& st) {
  const Exec exec = st.range(0) ? Exec::parallel : Exec::serial;
  const std::vector<PointGroup> groups{{0.0, 1.0, 3}};
  const PairIntegrand f{PairIntegrand::Kind::moment, 0.5, 0};
  for (auto _ : st)
    benchmark::DoNotOptimize(ordered_integral_at(groups, KernelSpec::circle(), TestFunctionSpec::constant(), f,
                                                 static_cast<int>(st.range(1)), 1.0, exec));
}
BENCHMARK(BM_ordered_integral)->ArgsProduct({{0, 1}, {2, 4}})->Unit(benchmark::kMillisecond);

static void BM_sampler(benchmark::State& st) {
  const Exec exec = st.range(0) ? Exec::parallel : Exec::serial;
  const int N = static_cast<int>(st.range(1));
  const CovarianceGrid cg = build_covariance(KernelSpec::circle(), 0.5, 4.0 / N, N);
  for (auto _ : st)
    benchmark::DoNotOptimize(sample_total_mass(cg, TestFunctionSpec::constant(), 2048, 1, exec).samples.data());
}
BENCHMARK(BM_sampler)->ArgsProduct({{0, 1}, {256, 1024}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
