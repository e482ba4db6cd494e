#include "rvlab/quad_differential.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rvlab {

cplx QuadDifferential::eval_in(Model target, cplx z) const {
  if (target == model) return eval(z);
  MoebiusC t = (model == Model::disk) ? MoebiusC::cayley()            // half-plane point -> disk
                                      : MoebiusC::cayley_inverse();   // disk point -> half-plane
  cplx w = t(z);
  cplx dw = t.derivative(z);
  return eval(w) * dw * dw;
}

QuadDifferential QuadDifferential::poincare_series(const FuchsianGroup& group,
                                                   const std::vector<cplx>& seed_coeffs,
                                                   int cutoff) {
  if (seed_coeffs.empty()) throw std::invalid_argument("poincare_series: empty seed");
  auto elements = std::make_shared<std::vector<MoebiusC>>(group.enumerate_disk(cutoff));
  auto coeffs = std::make_shared<std::vector<cplx>>(seed_coeffs);
  QuadDifferential q;
  q.model = Model::disk;
  q.kind = "poincare-series";
  q.eval = [elements, coeffs](cplx w) {
    cplx total = 0;
    for (const auto& U : *elements) {
      cplx den = U.c * w + U.d;
      cplx Uw = (U.a * w + U.b) / den;
      cplx dU = (U.a * U.d - U.b * U.c) / (den * den);
      cplx p = 0;
      for (auto it = coeffs->rbegin(); it != coeffs->rend(); ++it) p = p * Uw + *it;
      total += p * dU * dU;
    }
    return total;
  };
  return q;
}

QuadDifferential QuadDifferential::rational_pole(cplx pole, cplx coeff) {
  if (!(pole.imag() < 0))
    throw std::invalid_argument("rational_pole: pole must lie below the real axis");
  QuadDifferential q;
  q.model = Model::half_plane;
  q.kind = "rational";
  q.eval = [pole, coeff](cplx z) {
    cplx d = z - pole;
    cplx d2 = d * d;
    return coeff / (d2 * d2);
  };
  return q;
}

QuadDifferential QuadDifferential::cyclic_exact(double lambda2, int k) {
  if (!(lambda2 > 1)) throw std::invalid_argument("cyclic_exact: lambda2 must exceed 1");
  double theta = 2 * std::numbers::pi * k / std::log(lambda2);
  QuadDifferential q;
  q.model = Model::half_plane;
  q.kind = "cyclic-exact";
  q.eval = [theta](cplx z) {
    cplx lz = std::log(z);  // principal branch; the half-plane avoids the cut
    return std::exp(-2.0 * lz + cplx(0, theta) * lz);
  };
  return q;
}

QuadDifferential QuadDifferential::polynomial(const std::vector<cplx>& coeffs, Model model) {
  auto c = std::make_shared<std::vector<cplx>>(coeffs);
  QuadDifferential q;
  q.model = model;
  q.kind = "polynomial";
  q.eval = [c](cplx z) {
    cplx p = 0;
    for (auto it = c->rbegin(); it != c->rend(); ++it) p = p * z + *it;
    return p;
  };
  return q;
}

QuadDifferential QuadDifferential::combination(
    const std::vector<std::pair<cplx, QuadDifferential>>& terms) {
  if (terms.empty()) return zero();
  Model m = terms.front().second.model;
  for (const auto& [w, t] : terms)
    if (t.model != m) throw std::invalid_argument("combination: mixed evaluation models");
  auto copy = std::make_shared<std::vector<std::pair<cplx, QuadDifferential>>>(terms);
  QuadDifferential q;
  q.model = m;
  q.kind = "combination";
  q.eval = [copy](cplx z) {
    cplx s = 0;
    for (const auto& [w, t] : *copy) s += w * t.eval(z);
    return s;
  };
  return q;
}

double QuadDifferential::automorphy_residual(const FuchsianGroup& group,
                                             const std::vector<cplx>& points) const {
  double worst = 0;
  for (const auto& gen : group.generators) {
    MoebiusC A = (model == Model::disk) ? MoebiusC::to_disk(gen) : MoebiusC::from_real(gen);
    for (cplx z : points) {
      cplx Az = A(z);
      cplx dA = A.derivative(z);
      cplx defect = eval(Az) * dA * dA - eval(z);
      worst = std::max(worst, std::abs(defect) / hyperbolic_density(model, z));
    }
  }
  return worst;
}

double rq_inner_product(const RQVector& v, const RQVector& w, const QuadratureRule& rule,
                        Model model) {
  double s = 0;
  for (const auto& n : rule.nodes) {
    cplx pv = v.phi.eval_in(model, n.z);
    cplx pw = w.phi.eval_in(model, n.z);
    s += n.w * 2.0 * std::real(pv * std::conj(pw)) / hyperbolic_density(model, n.z);
  }
  return s;
}

}  // namespace rvlab
