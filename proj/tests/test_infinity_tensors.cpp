#include <doctest.h>

#include <cmath>

#include "rvlab/infinity_tensors.hpp"

using namespace rvlab;

namespace {

ComplexGrid hyperbolic_lambda(int n, double hw, cplx center) {
  ComplexGrid l(n, hw, center);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      cplx z = l.coord(ix, iy);
      l.at(ix, iy) = 0.5 * std::log(hyperbolic_density(Model::half_plane, z));
    }
  return l;
}

}  // namespace

TEST_CASE("gauss curvature of the hyperbolic factor is -1") {
  ComplexGrid lambda = hyperbolic_lambda(64, 1.0, cplx(0, 2));
  ComplexGrid k = gauss_curvature(lambda);
  double worst = 0;
  for (int iy = 4; iy < 60; ++iy)
    for (int ix = 4; ix < 60; ++ix) worst = std::max(worst, std::abs(k.at(ix, iy) - cplx(-1, 0)));
  CHECK(worst < 1e-3);
}

TEST_CASE("flat boundary data: B = Id/2 and III = I/4") {
  int n = 64;
  ComplexGrid lambda = hyperbolic_lambda(n, 1.0, cplx(0, 2));
  ComplexGrid phi(n, 1.0, cplx(0, 2));  // zero differential
  SurfaceAtInfinity s = assemble_at_infinity(lambda, phi, Model::half_plane);

  TensorField2x2 first = to_real_form(s.first);
  double worst_shape = 0, worst_third = 0, worst_h = 0;
  for (int iy = 8; iy < n - 8; ++iy)
    for (int ix = 8; ix < n - 8; ++ix) {
      worst_h = std::max(worst_h, std::abs(s.mean_curv.at(ix, iy) - cplx(1, 0)));
      worst_shape = std::max({worst_shape, std::abs(s.shape.a11.at(ix, iy) - cplx(0.5, 0)),
                              std::abs(s.shape.a22.at(ix, iy) - cplx(0.5, 0)),
                              std::abs(s.shape.a12.at(ix, iy)), std::abs(s.shape.a21.at(ix, iy))});
      worst_third = std::max(
          worst_third, std::abs(s.third.xx.at(ix, iy) - 0.25 * first.xx.at(ix, iy)) /
                           std::abs(first.xx.at(ix, iy)));
    }
  CHECK(worst_h < 1e-3);
  CHECK(worst_shape < 1e-3);
  CHECK(worst_third < 1e-3);
}

TEST_CASE("constant differential lands in the traceless part") {
  int n = 48;
  ComplexGrid lambda = hyperbolic_lambda(n, 1.0, cplx(0, 2));
  ComplexGrid phi(n, 1.0, cplx(0, 2));
  cplx c(0.3, -0.1);
  for (auto& v : phi.v) v = c;
  SurfaceAtInfinity s = assemble_at_infinity(lambda, phi, Model::half_plane);
  CHECK(std::abs(s.second0.h20.at(20, 20) - c / 2.0) < 1e-13);
  CHECK(std::abs(s.second0.h11.at(20, 20)) < 1e-13);
  // II picks up the (H/2) I trace on top of II0
  double rho = std::real(s.first.h11.at(20, 20));
  cplx want_h11 = 0.5 * s.mean_curv.at(20, 20) * rho;
  CHECK(std::abs(s.second.h11.at(20, 20) - want_h11) < 1e-12);
}

TEST_CASE("real form round-trip is exact") {
  MetricField g = MetricField::hyperbolic(Model::half_plane, 32, 1.0, cplx(0, 2));
  for (int iy = 0; iy < 32; ++iy)
    for (int ix = 0; ix < 32; ++ix) g.h20.at(ix, iy) = cplx(0.1 * ix, -0.05 * iy);

  TensorField2x2 t = to_real_form(g);
  MetricField back = from_real_form(t, Model::half_plane);
  double worst = 0;
  for (std::size_t i = 0; i < g.h20.v.size(); ++i) {
    worst = std::max(worst, std::abs(back.h20.v[i] - g.h20.v[i]));
    worst = std::max(worst, std::abs(back.h11.v[i] - g.h11.v[i]));
  }
  CHECK(worst < 1e-14);

  // the xy component carries -2 Im h20 for a pure quadratic part
  MetricField q = g.quadratic_part();
  TensorField2x2 tq = to_real_form(q);
  CHECK(std::real(tq.xy.at(5, 7)) == doctest::Approx(-2 * std::imag(g.h20.at(5, 7))));
  CHECK(std::real(tq.xx.at(5, 7)) == doctest::Approx(2 * std::real(g.h20.at(5, 7))));
}
