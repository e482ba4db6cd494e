#include "rvlab/infinity_tensors.hpp"

#include <cmath>
#include <stdexcept>

#include "rvlab/schwarzian.hpp"

namespace rvlab {

TensorField2x2 to_real_form(const MetricField& g) {
  TensorField2x2 t;
  t.xx = ComplexGrid(g.h20.n, g.h20.half_width, g.h20.center);
  t.xy = t.xx;
  t.yy = t.xx;
  for (std::size_t i = 0; i < g.h20.v.size(); ++i) {
    double a_re = g.h20.v[i].real(), a_im = g.h20.v[i].imag();
    double e = g.h11.v[i].real();
    t.xx.v[i] = 2 * a_re + e;
    t.yy.v[i] = -2 * a_re + e;
    t.xy.v[i] = -2 * a_im;
  }
  return t;
}

MetricField from_real_form(const TensorField2x2& t, Model model) {
  MetricField g;
  g.model = model;
  g.h20 = ComplexGrid(t.xx.n, t.xx.half_width, t.xx.center);
  g.h11 = g.h20;
  for (std::size_t i = 0; i < t.xx.v.size(); ++i) {
    double xx = t.xx.v[i].real(), yy = t.yy.v[i].real(), xy = t.xy.v[i].real();
    g.h20.v[i] = cplx((xx - yy) / 4, -xy / 2);
    g.h11.v[i] = (xx + yy) / 2;
  }
  return g;
}

ComplexGrid gauss_curvature(const ComplexGrid& lambda) {
  ComplexGrid k(lambda.n, lambda.half_width, lambda.center);
  double h2 = lambda.spacing() * lambda.spacing();
  for (int iy = 1; iy < lambda.n - 1; ++iy)
    for (int ix = 1; ix < lambda.n - 1; ++ix) {
      double lap = (lambda.at(ix + 1, iy) + lambda.at(ix - 1, iy) + lambda.at(ix, iy + 1) +
                    lambda.at(ix, iy - 1) - 4.0 * lambda.at(ix, iy))
                       .real() /
                   h2;
      k.at(ix, iy) = -std::exp(-2 * lambda.at(ix, iy).real()) * lap;
    }
  return k;
}

SurfaceAtInfinity assemble_at_infinity(const ComplexGrid& lambda, const ComplexGrid& phi,
                                       Model model) {
  if (!lambda.same_layout(phi))
    throw std::invalid_argument("assemble_at_infinity: grid layouts differ");
  SurfaceAtInfinity s;
  s.model = model;
  s.lambda = lambda;
  s.curvature = gauss_curvature(lambda);
  s.mean_curv = ComplexGrid(lambda.n, lambda.half_width, lambda.center);
  for (std::size_t i = 0; i < s.mean_curv.v.size(); ++i)
    s.mean_curv.v[i] = -s.curvature.v[i].real();

  s.first.model = model;
  s.first.h20 = ComplexGrid(lambda.n, lambda.half_width, lambda.center);
  s.first.h11 = s.first.h20;
  for (std::size_t i = 0; i < lambda.v.size(); ++i)
    s.first.h11.v[i] = std::exp(2 * lambda.v[i].real());

  s.second0.model = model;
  s.second0.h20 = ComplexGrid(lambda.n, lambda.half_width, lambda.center);
  s.second0.h11 = s.second0.h20;
  for (std::size_t i = 0; i < phi.v.size(); ++i) s.second0.h20.v[i] = phi.v[i] / 2.0;

  s.second = s.second0;
  for (std::size_t i = 0; i < s.second.h11.v.size(); ++i)
    s.second.h11.v[i] = s.mean_curv.v[i].real() / 2 * s.first.h11.v[i].real();

  TensorField2x2 gi = to_real_form(s.first);
  TensorField2x2 pii = to_real_form(s.second);
  s.shape.a11 = ComplexGrid(lambda.n, lambda.half_width, lambda.center);
  s.shape.a12 = s.shape.a11;
  s.shape.a21 = s.shape.a11;
  s.shape.a22 = s.shape.a11;
  s.third.xx = s.shape.a11;
  s.third.xy = s.shape.a11;
  s.third.yy = s.shape.a11;
  for (std::size_t i = 0; i < lambda.v.size(); ++i) {
    double g11 = gi.xx.v[i].real(), g12 = gi.xy.v[i].real(), g22 = gi.yy.v[i].real();
    double det = g11 * g22 - g12 * g12;
    if (det <= 0) continue;
    double p11 = pii.xx.v[i].real(), p12 = pii.xy.v[i].real(), p22 = pii.yy.v[i].real();
    // B = G^{-1} P
    double b11 = (g22 * p11 - g12 * p12) / det;
    double b12 = (g22 * p12 - g12 * p22) / det;
    double b21 = (g11 * p12 - g12 * p11) / det;
    double b22 = (g11 * p22 - g12 * p12) / det;
    s.shape.a11.v[i] = b11;
    s.shape.a12.v[i] = b12;
    s.shape.a21.v[i] = b21;
    s.shape.a22.v[i] = b22;
    // III(X,Y) = I(BX, BY) = B^T G B
    s.third.xx.v[i] = b11 * (g11 * b11 + g12 * b21) + b21 * (g12 * b11 + g22 * b21);
    s.third.xy.v[i] = b11 * (g11 * b12 + g12 * b22) + b21 * (g12 * b12 + g22 * b22);
    s.third.yy.v[i] = b12 * (g11 * b12 + g12 * b22) + b22 * (g12 * b12 + g22 * b22);
  }
  return s;
}

MetricField ii0_from_map(const std::function<cplx(cplx)>& f, int n, double half_width,
                         cplx center, Model model, double stencil_h) {
  MetricField g;
  g.model = model;
  g.h20 = ComplexGrid(n, half_width, center);
  g.h11 = g.h20;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      cplx z = g.h20.coord(ix, iy);
      if (!in_model_domain(model, z)) continue;
      g.h20.at(ix, iy) = -schwarzian_of(f, z, stencil_h) / 2.0;
    }
  return g;
}

double sup_invariant_h20(const MetricField& g) {
  double sup = 0;
  for (int iy = 0; iy < g.h20.n; ++iy)
    for (int ix = 0; ix < g.h20.n; ++ix) {
      cplx z = g.h20.coord(ix, iy);
      if (!in_model_domain(g.model, z)) continue;
      double rho = hyperbolic_density(g.model, z);
      sup = std::max(sup, 2 * std::abs(g.h20.at(ix, iy)) / rho);
    }
  return sup;
}

}  // namespace rvlab
