#pragma once

#include <cstdint>
#include <vector>

#include "rvlab/mesh.hpp"

namespace rvlab {

// exact first variation of W under a conformal direction u = delta phi:
// omega(u) = -(1/4) sum_i defect_i u_i
double w_first_variation(const DiscreteMetricSurface& m, const std::vector<double>& u);

// W(phi + u) - W(phi) by Gauss-Legendre quadrature of omega along the
// straight segment; omega is closed, so the value is path independent
double w_conformal_change(const DiscreteMetricSurface& m, const std::vector<double>& u,
                          int nodes = 16);

struct FlowOptions {
  double dt = 0.05;
  double dt_max = 0.5;
  double t_end = 200.0;
  int max_steps = 20000;
  double curvature_tol = 5e-5;  // stop when max|K - Kbar| falls below
  double w_slack = 1e-10;       // tolerated decrease before a step is rejected
  bool project_area = true;
  double target_area = 0;  // 0 means keep the initial area
  int quad_nodes = 8;
};

struct FlowSample {
  int step = 0;
  double t = 0;
  double dt = 0;
  double w = 0;         // cumulative W relative to the start
  double dw = 0;        // increment contributed by this step
  double rate = 0;      // (1/4)(sum K^2 da - (2 pi chi)^2 / A) before the step
  double max_dev = 0;   // max |K - Kbar| before the step
  double area = 0;
  double gauss_bonnet = 0;  // sum K da - 2 pi chi
  double min_angle = 0;
};

struct FlowResult {
  DiscreteMetricSurface surface;
  std::vector<FlowSample> trace;
  bool converged = false;
  int halvings = 0;
};

// normalized discrete Yamabe flow d phi / dt = -(K - Kbar) with explicit Euler
// steps, step halving on W decrease or triangle collapse, and per-step area
// restoration by a uniform shift of phi
FlowResult ricci_flow(const DiscreteMetricSurface& m, const FlowOptions& opts);

// direction certifying non-criticality wherever curvature is nonconstant:
// u is supported at the extreme-curvature vertices, balanced so that
// sum u_i da_i = 0, and the first variation -(1/4) sum K_i u_i da_i is > 0
struct NonuniquenessWitness {
  bool found = false;
  std::vector<double> u;
  double variation = 0;  // w_first_variation along u
  double area_pairing = 0;  // sum u_i da_i (zero by construction)
};

NonuniquenessWitness nonuniqueness_witness(const DiscreteMetricSurface& m, double tol = 1e-12);

// Random conformal factor with sup norm exactly `amplitude` whose metric keeps
// every triangle valid.  Independent per-vertex draws at amplitudes this large
// routinely break the triangle inequality on fine meshes, so the raw field is
// relaxed by neighbour averaging (at least min_passes rounds, more if needed)
// before rescaling.
std::vector<double> admissible_perturbation(const DiscreteMetricSurface& m, double amplitude,
                                            std::uint64_t seed, int min_passes = 3);

}  // namespace rvlab
