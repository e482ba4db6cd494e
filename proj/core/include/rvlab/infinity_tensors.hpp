#pragma once

#include <functional>

#include "rvlab/pullback.hpp"

namespace rvlab {

// real symmetric 2-tensor T = T_xx dx^2 + 2 T_xy dx dy + T_yy dy^2 (grids hold real values)
struct TensorField2x2 {
  ComplexGrid xx, xy, yy;
};

// endomorphism field (shape operators are generally not symmetric)
struct MatrixField2x2 {
  ComplexGrid a11, a12, a21, a22;
};

// 2 Re(h20 dz^2) + h11 |dz|^2  ->  (T_xx, T_xy, T_yy)
TensorField2x2 to_real_form(const MetricField& g);
MetricField from_real_form(const TensorField2x2& t, Model model);

// K = -e^{-2 lambda} Laplacian(lambda), 5-point stencil; one-node margin left at zero
ComplexGrid gauss_curvature(const ComplexGrid& lambda);

// boundary-at-infinity data built from a conformal factor and a holomorphic
// quadratic differential phi: I = e^{2 lambda} |dz|^2, II0 = Re(phi dz^2),
// H = -K(I), II = II0 + (H/2) I, B = I^{-1} II, III = I(B., B.)
struct SurfaceAtInfinity {
  Model model = Model::half_plane;
  ComplexGrid lambda;
  ComplexGrid curvature;      // K, real
  ComplexGrid mean_curv;      // H = -K, real
  MetricField first, second0, second;
  MatrixField2x2 shape;
  TensorField2x2 third;
};

SurfaceAtInfinity assemble_at_infinity(const ComplexGrid& lambda, const ComplexGrid& phi,
                                       Model model);

// traceless second fundamental form induced by a locally injective map:
// II0 = -Re(S(f) dz^2), returned as the field with h20 = -S/2
MetricField ii0_from_map(const std::function<cplx(cplx)>& f, int n, double half_width,
                         cplx center, Model model, double stencil_h);

// sup over in-domain nodes of the density-invariant size |phi|/rho of h20
double sup_invariant_h20(const MetricField& g);

}  // namespace rvlab
