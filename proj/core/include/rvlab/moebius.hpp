#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace rvlab {

using cplx = std::complex<double>;

inline bool is_point_at_infinity(const cplx& z) {
  return std::isinf(z.real()) || std::isinf(z.imag());
}
inline cplx point_at_infinity() { return {HUGE_VAL, 0.0}; }

// Element of PSL(2,R): real unit-determinant matrix up to global sign,
// acting on the upper half-plane by z -> (az+b)/(cz+d).
struct MoebiusMap {
  double a = 1, b = 0, c = 0, d = 1;

  double det() const { return a * d - b * c; }

  cplx operator()(cplx z) const;
  // A'(z) = 1/(cz+d)^2
  cplx derivative(cplx z) const;

  // (A.compose(B))(z) = A(B(z))
  MoebiusMap compose(const MoebiusMap& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  MoebiusMap inverse() const { return {d, -b, -c, a}; }

  // scales to unit determinant and fixes the overall sign so the first
  // entry of magnitude > 1e-9 is positive; used for dedup keys
  MoebiusMap normalized() const;
  // quantized entries of the normalized matrix (1e-9 resolution)
  std::array<std::int64_t, 4> key() const;

  static MoebiusMap identity() { return {}; }
  // elliptic rotation by theta about i
  static MoebiusMap rotation(double theta) {
    double c2 = std::cos(theta / 2), s2 = std::sin(theta / 2);
    return {c2, s2, -s2, c2};
  }
  // hyperbolic translation of length ell along the imaginary axis
  static MoebiusMap translation_along_axis(double ell) {
    return {std::exp(ell / 2), 0, 0, std::exp(-ell / 2)};
  }
};

// Moebius map with complex entries (disk model and general conjugations).
struct MoebiusC {
  cplx a = 1, b = 0, c = 0, d = 1;

  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;
  MoebiusC compose(const MoebiusC& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  MoebiusC inverse() const { return {d, -b, -c, a}; }

  static MoebiusC from_real(const MoebiusMap& m) { return {m.a, m.b, m.c, m.d}; }
  // Cayley transform z -> (z-i)/(z+i), upper half-plane onto the unit disk
  static MoebiusC cayley() { return {1, cplx(0, -1), 1, cplx(0, 1)}; }
  static MoebiusC cayley_inverse() { return cayley().inverse(); }
  // conjugate a half-plane map into the disk model: C A C^{-1}
  static MoebiusC to_disk(const MoebiusMap& m) {
    return cayley().compose(MoebiusC::from_real(m)).compose(cayley_inverse());
  }
};

}  // namespace rvlab
