#include "rvlab/schwarzian.hpp"

#include <array>
#include <stdexcept>

namespace rvlab {

namespace {

cplx schwarzian_from_samples(const std::array<cplx, 5>& s, double h) {
  cplx f1 = (-s[4] + 8.0 * s[3] - 8.0 * s[1] + s[0]) / (12 * h);
  cplx f2 = (-s[4] + 16.0 * s[3] - 30.0 * s[2] + 16.0 * s[1] - s[0]) / (12 * h * h);
  cplx f3 = (s[4] - 2.0 * s[3] + 2.0 * s[1] - s[0]) / (2 * h * h * h);
  cplx r = f2 / f1;
  return f3 / f1 - 1.5 * r * r;
}

}  // namespace

cplx schwarzian_stencil(const ComplexGrid& f, int ix, int iy) {
  if (ix < 2 || ix >= f.n - 2 || iy < 0 || iy >= f.n)
    throw std::out_of_range("schwarzian_stencil: node too close to the grid edge");
  std::array<cplx, 5> s;
  for (int k = -2; k <= 2; ++k) s[k + 2] = f.at(ix + k, iy);
  return schwarzian_from_samples(s, f.spacing());
}

ComplexGrid schwarzian_field(const ComplexGrid& f) {
  ComplexGrid out(f.n, f.half_width, f.center);
  for (int iy = 0; iy < f.n; ++iy)
    for (int ix = 2; ix < f.n - 2; ++ix) out.at(ix, iy) = schwarzian_stencil(f, ix, iy);
  return out;
}

namespace {

cplx schwarzian_once(const std::function<cplx(cplx)>& f, cplx z, double h) {
  std::array<cplx, 5> s;
  for (int k = -2; k <= 2; ++k) s[k + 2] = f(z + static_cast<double>(k) * h);
  return schwarzian_from_samples(s, h);
}

}  // namespace

cplx schwarzian_of(const std::function<cplx(cplx)>& f, cplx z, double h) {
  // the stencil error is an even series in h, so two Richardson stages over
  // h, h/2, h/4 leave O(h^6) while keeping h large enough to stay clear of
  // the 1/h^3 rounding floor of the third derivative
  cplx s0 = schwarzian_once(f, z, h);
  cplx s1 = schwarzian_once(f, z, h / 2);
  cplx s2 = schwarzian_once(f, z, h / 4);
  cplx a1 = (4.0 * s1 - s0) / 3.0;
  cplx a2 = (4.0 * s2 - s1) / 3.0;
  return (16.0 * a2 - a1) / 15.0;
}

cplx schwarzian_compose(cplx sf_at_gz, cplx g_prime, cplx sg_at_z) {
  return sf_at_gz * g_prime * g_prime + sg_at_z;
}

}  // namespace rvlab
