#include "rvlab/moebius.hpp"

#include <cstdlib>

namespace rvlab {

cplx MoebiusMap::operator()(cplx z) const {
  if (is_point_at_infinity(z)) {
    if (c == 0.0) return point_at_infinity();
    return {a / c, 0.0};
  }
  cplx den = c * z + d;
  if (den == cplx(0, 0)) return point_at_infinity();
  return (a * z + b) / den;
}

cplx MoebiusMap::derivative(cplx z) const {
  cplx den = c * z + d;
  if (den == cplx(0, 0)) return point_at_infinity();
  double dt = det();
  return dt / (den * den);
}

MoebiusMap MoebiusMap::normalized() const {
  double dt = det();
  double s = 1.0 / std::sqrt(std::abs(dt));
  MoebiusMap m{a * s, b * s, c * s, d * s};
  const double* e = &m.a;
  for (int i = 0; i < 4; ++i) {
    if (std::abs(e[i]) > 1e-9) {
      if (e[i] < 0) { m.a = -m.a; m.b = -m.b; m.c = -m.c; m.d = -m.d; }
      break;
    }
  }
  return m;
}

std::array<std::int64_t, 4> MoebiusMap::key() const {
  MoebiusMap m = normalized();
  auto q = [](double x) { return static_cast<std::int64_t>(std::llround(x * 1e9)); };
  return {q(m.a), q(m.b), q(m.c), q(m.d)};
}

cplx MoebiusC::operator()(cplx z) const {
  if (is_point_at_infinity(z)) {
    if (c == cplx(0, 0)) return point_at_infinity();
    return a / c;
  }
  cplx den = c * z + d;
  if (den == cplx(0, 0)) return point_at_infinity();
  return (a * z + b) / den;
}

cplx MoebiusC::derivative(cplx z) const {
  cplx den = c * z + d;
  if (den == cplx(0, 0)) return point_at_infinity();
  return (a * d - b * c) / (den * den);
}

}  // namespace rvlab
