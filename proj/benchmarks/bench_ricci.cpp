#include <benchmark/benchmark.h>

#include <string>

#include "rvlab/mesh.hpp"
#include "rvlab/wvol.hpp"

using namespace rvlab;

namespace {

DiscreteMetricSurface perturbed_mesh(double amplitude, std::uint64_t seed) {
  DiscreteMetricSurface m =
      DiscreteMetricSurface::load(std::string(RVLAB_DATA_DIR) + "/genus2_mesh.txt");
  m.phi = admissible_perturbation(m, amplitude, seed);
  return m;
}

}  // namespace

static void BM_MeshGeometry(benchmark::State& state) {
  DiscreteMetricSurface m = perturbed_mesh(0.3, 1);
  for (auto _ : state) {
    MeshGeometry geo = mesh_geometry(m);
    benchmark::DoNotOptimize(geo.total_area);
  }
}
BENCHMARK(BM_MeshGeometry);

static void BM_RicciStep(benchmark::State& state) {
  DiscreteMetricSurface m = perturbed_mesh(0.3, 1);
  FlowOptions opts;
  opts.dt = 1e-4;
  opts.dt_max = 1e-4;
  opts.max_steps = 1;
  opts.t_end = 1.0;
  opts.curvature_tol = 0;
  opts.project_area = false;
  opts.quad_nodes = 6;
  for (auto _ : state) {
    FlowResult r = ricci_flow(m, opts);
    benchmark::DoNotOptimize(r.trace.back().w);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RicciStep)->Unit(benchmark::kMillisecond);

static void BM_WConformalChange(benchmark::State& state) {
  int nodes = static_cast<int>(state.range(0));
  DiscreteMetricSurface m = perturbed_mesh(0.3, 1);
  std::vector<double> u = admissible_perturbation(m, 0.1, 9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(w_conformal_change(m, u, nodes));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_WConformalChange)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
