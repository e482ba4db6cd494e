#include <benchmark/benchmark.h>

#include <vector>

#include "rvlab/fuchsian.hpp"
#include "rvlab/quad_differential.hpp"

using namespace rvlab;

static void BM_GroupBall(benchmark::State& state) {
  int cutoff = static_cast<int>(state.range(0));
  FuchsianGroup g = FuchsianGroup::genus2_octagon();
  for (auto _ : state) {
    auto ball = g.enumerate(cutoff);
    benchmark::DoNotOptimize(ball.size());
  }
}
BENCHMARK(BM_GroupBall)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_PoincareSeriesBuild(benchmark::State& state) {
  int cutoff = static_cast<int>(state.range(0));
  FuchsianGroup g = FuchsianGroup::genus2_octagon();
  std::vector<cplx> seed = {0.3, cplx(0, -0.2), 1.0};
  for (auto _ : state) {
    QuadDifferential q = QuadDifferential::poincare_series(g, seed, cutoff);
    benchmark::DoNotOptimize(q);
  }
}
BENCHMARK(BM_PoincareSeriesBuild)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_PoincareSeriesEval(benchmark::State& state) {
  int cutoff = static_cast<int>(state.range(0));
  FuchsianGroup g = FuchsianGroup::genus2_octagon();
  std::vector<cplx> seed = {0.3, cplx(0, -0.2), 1.0};
  QuadDifferential q = QuadDifferential::poincare_series(g, seed, cutoff);
  cplx z(0.21, -0.35);
  for (auto _ : state) {
    benchmark::DoNotOptimize(q(z));
  }
}
BENCHMARK(BM_PoincareSeriesEval)->DenseRange(1, 4);
