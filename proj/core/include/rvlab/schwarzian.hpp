#pragma once

#include <functional>

#include "rvlab/grid.hpp"

namespace rvlab {

// S(f) = f'''/f' - (3/2)(f''/f')^2 from fourth-order row stencils.
// The stencil needs ix in [2, n-3]; throws std::out_of_range otherwise.
cplx schwarzian_stencil(const ComplexGrid& f, int ix, int iy);

// Schwarzian at every admissible node; the two-node margin is left at zero
ComplexGrid schwarzian_field(const ComplexGrid& f);

// stencil applied to a callable at spacings h, h/2, h/4 and Richardson
// extrapolated; h is the widest spacing used
cplx schwarzian_of(const std::function<cplx(cplx)>& f, cplx z, double h);

// cocycle: S(f o g)(z) = S(f)(g(z)) g'(z)^2 + S(g)(z)
cplx schwarzian_compose(cplx sf_at_gz, cplx g_prime, cplx sg_at_z);

}  // namespace rvlab
