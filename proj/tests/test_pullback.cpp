#include <doctest.h>

#include <cmath>

#include "rvlab/hessian_lab.hpp"
#include "rvlab/infinity_tensors.hpp"
#include "rvlab/pullback.hpp"

using namespace rvlab;

namespace {

// QCMap with exact analytic derivative grids, no solver involved
QCMap analytic_map(const std::function<cplx(cplx)>& f, const std::function<cplx(cplx)>& fz,
                   const std::function<cplx(cplx)>& fzb, int n, double half_width) {
  QCMap m;
  m.f = ComplexGrid(n, half_width);
  m.fz = m.f;
  m.fzb = m.f;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      cplx z = m.f.coord(ix, iy);
      m.f.at(ix, iy) = f(z);
      m.fz.at(ix, iy) = fz(z);
      m.fzb.at(ix, iy) = fzb(z);
    }
  return m;
}

}  // namespace

TEST_CASE("pullback under a disk isometry is the hyperbolic metric") {
  cplx a(0.3, -0.2);
  auto f = [a](cplx z) { return (z + a) / (1.0 + std::conj(a) * z); };
  auto fz = [a](cplx z) {
    cplx d = 1.0 + std::conj(a) * z;
    return (1.0 - std::norm(a)) / (d * d);
  };
  QCMap m = analytic_map(f, fz, [](cplx) { return cplx(0, 0); }, 64, 0.995);

  MetricField g = pullback_metric(m, Model::disk);
  double worst20 = 0, worst11 = 0;
  int used = 0;
  for (int iy = 0; iy < 64; ++iy)
    for (int ix = 0; ix < 64; ++ix) {
      cplx z = g.h20.coord(ix, iy);
      if (std::abs(z) > 0.9) continue;  // data only exists where f(z) stays inside
      double rho = hyperbolic_density(Model::disk, z);
      worst20 = std::max(worst20, std::abs(g.h20.at(ix, iy)) / rho);
      worst11 = std::max(worst11, std::abs(g.h11.at(ix, iy) - rho) / rho);
      ++used;
    }
  CHECK(used > 1000);
  CHECK(worst20 < 1e-12);
  CHECK(worst11 < 1e-12);
}

TEST_CASE("pullback of a non-conformal map produces the expected tensors") {
  // w = z + 0.1 conj(z): f_z = 1, f_zb = 0.1
  auto f = [](cplx z) { return z + 0.1 * std::conj(z); };
  QCMap m = analytic_map(
      f, [](cplx) { return cplx(1, 0); }, [](cplx) { return cplx(0.1, 0); }, 48, 0.6);
  MetricField g = pullback_metric(m, Model::disk);
  for (int k : {10, 20, 30}) {
    cplx z = g.h20.coord(k, k);
    cplx w = f(z);
    if (!in_model_domain(Model::disk, w)) continue;
    double rho = hyperbolic_density(Model::disk, w);
    CHECK(std::abs(g.h20.at(k, k) - rho * 0.1) < 1e-12);
    CHECK(std::abs(g.h11.at(k, k) - rho * 1.01) < 1e-12);
  }
}

TEST_CASE("rq tensor has h20 = phi/2 and no trace") {
  QuadDifferential p = QuadDifferential::rational_pole(cplx(0, -1), cplx(2, 1));
  MetricField t = rq_tensor(p, 32, 4.0, cplx(0, 4));
  cplx z = t.h20.coord(7, 12);
  CHECK(std::abs(t.h20.at(7, 12) - p(z) / 2.0) < 1e-14);
  CHECK(std::abs(t.h11.at(7, 12)) == 0);
}

TEST_CASE("tensor inner product matches the exact pole pairing") {
  RationalDirection d{{cplx(0, -2)}, {cplx(1, 0)}};
  double want = rational_inner_exact(d, d);
  // same pairing summed over a grid; the grid covers the bulk of the mass
  MetricField t = rq_tensor(d.differential(), 512, 40.0, cplx(0, 40));
  double got = tensor_inner_product(t, t);
  CHECK(want > 0);
  CHECK(std::abs(got - want) < 0.02 * want);
}

TEST_CASE("metric variation of a linear family is exact") {
  MetricField base = MetricField::hyperbolic(Model::half_plane, 48, 4.0, cplx(0, 4));
  QuadDifferential p = QuadDifferential::rational_pole(cplx(0.5, -1), cplx(1, -1));
  MetricField dir = rq_tensor(p, 48, 4.0, cplx(0, 4));

  auto family = [&](double t) {
    MetricField g = base;
    for (std::size_t i = 0; i < g.h20.v.size(); ++i) {
      g.h20.v[i] += t * dir.h20.v[i];
      g.h11.v[i] += t * dir.h11.v[i];
    }
    return g;
  };
  MetricVariation var = metric_variation(family, 0.1, 3);
  double worst = 0;
  for (std::size_t i = 0; i < dir.h20.v.size(); ++i)
    worst = std::max(worst, std::abs(var.dot.h20.v[i] - dir.h20.v[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("quadratic and trace parts split the field") {
  MetricField g = MetricField::hyperbolic(Model::half_plane, 16, 2.0, cplx(0, 2));
  g.h20.at(3, 3) = cplx(1, 2);
  MetricField q = g.quadratic_part(), t = g.trace_part();
  CHECK(q.h20.at(3, 3) == cplx(1, 2));
  CHECK(std::abs(q.h11.at(8, 8)) == 0);
  CHECK(std::abs(t.h20.at(3, 3)) == 0);
  CHECK(t.h11.at(8, 8) == g.h11.at(8, 8));
}
