#include <benchmark/benchmark.h>

#include "skewlab/block.hpp"
#include "skewlab/rng.hpp"
#include "skewlab/experiments.hpp"
#include "skewlab/ulam.hpp"

using namespace skewlab;

namespace {

void BM_Wasserstein(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> xs(n), ys(n);
  for (int k = 0; k < n; ++k) {
    xs[k] = uniform01(1, k, 0);
    ys[k] = uniform01(2, k, 0);
  }
  const auto mu = EmpiricalMeasure::equal_weights(xs);
  const auto nu = EmpiricalMeasure::equal_weights(ys);
  for (auto _ : state)
    benchmark::DoNotOptimize(wasserstein1_circle(mu, nu));
  state.SetComplexityN(n);
}
BENCHMARK(BM_Wasserstein)->Range(256, 1 << 16)->Complexity();

void BM_BuildP(benchmark::State& state) {
  const int bins = static_cast<int>(state.range(0));
  const auto rho = GridMeasure::uniform(256);
  const auto f = FiberFamily::ns_forced(0.01, 0.001, 0.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_P(f, rho, bins, 4 * bins));
  state.SetComplexityN(bins);
}
BENCHMARK(BM_BuildP)->Range(64, 1024)->Complexity();

void BM_BlockAssembly(benchmark::State& state) {
  const auto g = BaseMap::linear(static_cast<int>(state.range(0)));
  const auto f = FiberFamily::ns_forced(0.01, 0.001, 0.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_blockL(g, f, 128, 64));
}
BENCHMARK(BM_BlockAssembly)->Arg(8)->Arg(32)->Arg(128);

void BM_CloudIteration(benchmark::State& state) {
  const SkewProduct F{BaseMap::linear(16), FiberFamily::ns_forced(0.01, 0.001, 0.5)};
  auto cloud = uniform_product_cloud(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    cloud = iterate_cloud(F, std::move(cloud), 10, 1);
    benchmark::DoNotOptimize(cloud.data());
  }
}
BENCHMARK(BM_CloudIteration)->Range(1000, 100000);

}  // namespace

BENCHMARK_MAIN();
