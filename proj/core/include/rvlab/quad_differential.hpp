#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "rvlab/density.hpp"
#include "rvlab/fuchsian.hpp"
#include "rvlab/quadrature.hpp"

namespace rvlab {

// Holomorphic quadratic differential phi(z) dz^2: weight-4 automorphic
// density, phi(Az) A'(z)^2 = phi(z) for deck transformations A.
class QuadDifferential {
 public:
  Model model = Model::half_plane;  // coordinates of the native evaluation
  std::string kind = "zero";
  std::function<cplx(cplx)> eval = [](cplx) { return cplx(0, 0); };

  cplx operator()(cplx z) const { return eval(z); }
  // evaluate in another model, transported with the weight-4 cocycle
  cplx eval_in(Model target, cplx z) const;

  // truncated Poincare series over the group ball of the given word length:
  // sum_A p(A w) A'(w)^2 with polynomial seed p, evaluated in the disk model
  static QuadDifferential poincare_series(const FuchsianGroup& group,
                                          const std::vector<cplx>& seed_coeffs, int cutoff);
  // c / (z - pole)^4 on the half-plane (pole strictly below the real axis)
  static QuadDifferential rational_pole(cplx pole, cplx coeff);
  // exactly automorphic differential for the cyclic group z -> lambda2 z:
  // z^{-2} exp(2 pi i k ln z / ln lambda2)
  static QuadDifferential cyclic_exact(double lambda2, int k);
  static QuadDifferential polynomial(const std::vector<cplx>& coeffs, Model model);
  static QuadDifferential zero() { return {}; }
  static QuadDifferential combination(const std::vector<std::pair<cplx, QuadDifferential>>& terms);

  // sup over sample points and generators of |phi(Az)A'^2 - phi(z)|,
  // measured in the invariant norm |phi| / rho
  double automorphy_residual(const FuchsianGroup& group, const std::vector<cplx>& points) const;
};

// Tangent vector v = Re(phi dz^2) in RQ; as a symmetric 2-tensor its
// dz^2-coefficient is phi/2 and it has no dzdzbar part.
struct RQVector {
  QuadDifferential phi;

  cplx h20(cplx z) const { return phi(z) / 2.0; }
};

// <<v, w>> = integral of 2 Re(phi psi-bar) / rho dx dy over the rule's region
double rq_inner_product(const RQVector& v, const RQVector& w, const QuadratureRule& rule,
                        Model model);

}  // namespace rvlab
