#include <benchmark/benchmark.h>

#include <complex>

#include "rvlab/beltrami.hpp"

using namespace rvlab;

static void BM_SolveBeltramiDisk(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto mu_fn = [](cplx z) {
    if (std::abs(z) >= 1.0) return cplx(0);
    return 0.5 * z / std::conj(z);
  };
  BeltramiField mu = BeltramiField::from_function(mu_fn, n, 8.0);
  for (auto _ : state) {
    QCMap f = solve_beltrami(mu);
    benchmark::DoNotOptimize(f.residual_l2);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_SolveBeltramiDisk)->RangeMultiplier(2)->Range(64, 512)->Complexity()->Unit(benchmark::kMillisecond);

static void BM_SolveBeltramiSmooth(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto mu_fn = [](cplx z) { return 0.4 * std::exp(-std::norm(z)); };
  BeltramiField mu = BeltramiField::from_function(mu_fn, n, 8.0);
  for (auto _ : state) {
    QCMap f = solve_beltrami(mu);
    benchmark::DoNotOptimize(f.residual_l2);
  }
}
BENCHMARK(BM_SolveBeltramiSmooth)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
