#pragma once

#include <functional>

#include "rvlab/beltrami.hpp"
#include "rvlab/density.hpp"
#include "rvlab/grid.hpp"
#include "rvlab/quad_differential.hpp"

namespace rvlab {

// conformal-class metric g = 2 Re(h20 dz^2) + h11 |dz|^2 sampled on a grid;
// the background hyperbolic metric has h20 = 0, h11 = rho
struct MetricField {
  Model model = Model::half_plane;
  ComplexGrid h20;
  ComplexGrid h11;  // values are real

  static MetricField hyperbolic(Model model, int n, double half_width, cplx center);

  MetricField quadratic_part() const;  // keep h20, zero the trace
  MetricField trace_part() const;      // keep h11, zero h20
};

// pullback of the hyperbolic metric of `target` under w = f(z)
MetricField pullback_metric(const QCMap& f, Model target);

// tensor field with h20 = phi/2 (the quadratic differential v = Re(phi dz^2))
MetricField rq_tensor(const QuadDifferential& phi, int n, double half_width, cplx center);

// L2 pairing <g,k> = integral of (8 Re(a conj(b)) + 2 e m) / rho^2 dA_hyp,
// summed over grid nodes inside the model domain
double tensor_inner_product(const MetricField& g, const MetricField& k);

MetricField metric_difference_quotient(const MetricField& plus, const MetricField& minus,
                                       double t);

struct MetricVariation {
  MetricField dot;           // Richardson-extrapolated t-derivative
  MetricField dot_coarse;    // widest central difference, for error estimates
  double richardson_slope;   // observed order when three levels were computed
};

// central differences of `family` at t0, t0/2 (and t0/4 when levels >= 3)
MetricVariation metric_variation(const std::function<MetricField(double)>& family, double t0,
                                 int levels = 2);

}  // namespace rvlab
