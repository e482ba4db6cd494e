#pragma once

#include <functional>
#include <optional>

#include "rvlab/grid.hpp"
#include "rvlab/quad_differential.hpp"

namespace rvlab {

// Sampled Beltrami coefficient, zero outside the grid. An optional exact
// sampler allows the solver to resample on its internal fine grid when
// dealiasing products.
struct BeltramiField {
  ComplexGrid mu;
  double sup_norm = 0;
  std::function<cplx(cplx)> sampler;  // may be empty

  static BeltramiField from_function(const std::function<cplx(cplx)>& f, int n,
                                     double half_width, cplx center = 0, double cap = 0.9);
  // mu = conj(phi) / (2 rho), checked against the cap, with the offending
  // location reported when ||mu||_inf >= cap
  static BeltramiField from_phi(const QuadDifferential& phi, int n, double half_width,
                                cplx center = 0, double cap = 0.9);

  // radius of the support around the grid center (max |z - center| with mu != 0)
  double support_radius() const;
};

struct SolverOptions {
  double tol = 1e-13;       // iteration stop: mean-square change per sweep
  int max_iter = 256;
  bool dealias = true;      // 2x zero-padded products
  // far-field affine gauge annulus [inner, outer] * half_width fractions;
  // skipped (identity gauge) when the support leaves no room
  double gauge_inner_margin = 1.12;  // times support radius
  double gauge_outer_frac = 0.95;    // times half_width
};

// Normalized quasiconformal solution of f_zbar = mu f_z.
struct QCMap {
  ComplexGrid f, fz, fzb;
  double mu_sup = 0;
  int iterations = 0;
  double residual_l2 = 0;   // weak-form Beltrami residual of the final iterate
  // far-field representative: f = (F - a)/b with F - (a + b z) -> 0 away
  // from the support; anchors record where 0 and 1 actually land
  cplx gauge_a = 0, gauge_b = 1;
  cplx anchor_f0 = 0, anchor_f1 = 1;
  bool gauge_fitted = false;

  cplx operator()(cplx z) const { return f.interp(z); }
  // exact (0,1,infinity)-normalized representative
  QCMap normalized_01() const;
  // min over the grid of |f_z| - |f_zbar| (positive iff orientation-preserving)
  double orientation_margin() const;
};

// Neumann-series solver: f = z + C[h], h = sum (mu B)^n mu, via FFT
// multipliers B -> conj(xi)/xi, C -> -2i/xi on the periodized grid.
QCMap solve_beltrami(const BeltramiField& mu, const SolverOptions& opts = {});

}  // namespace rvlab
