#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>

#include "rvlab/infinity_tensors.hpp"
#include "rvlab/moebius.hpp"
#include "rvlab/schwarzian.hpp"

using namespace rvlab;

static void BM_SchwarzianPoint(benchmark::State& state) {
  MoebiusMap m{2, 1, 1, 3};
  auto f = [&](cplx z) { return m(z); };
  cplx z(0.3, 1.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(schwarzian_of(f, z, 0.05));
  }
}
BENCHMARK(BM_SchwarzianPoint);

static void BM_SchwarzianFieldGrid(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  ComplexGrid f(n, 1.0, cplx(0, 2));
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) f.at(ix, iy) = std::exp(f.coord(ix, iy));
  for (auto _ : state) {
    ComplexGrid s = schwarzian_field(f);
    benchmark::DoNotOptimize(s.at(n / 2, n / 2));
  }
}
BENCHMARK(BM_SchwarzianFieldGrid)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

static void BM_IIZeroFromMap(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  MoebiusMap m{2, 1, 1, 3};
  for (auto _ : state) {
    MetricField ii0 = ii0_from_map([&](cplx z) { return m(z); }, n, 1.0, cplx(0, 1.5),
                                   Model::half_plane, 0.05);
    benchmark::DoNotOptimize(sup_invariant_h20(ii0));
  }
}
BENCHMARK(BM_IIZeroFromMap)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
