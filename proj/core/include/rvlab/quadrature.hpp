#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rvlab/fuchsian.hpp"
#include "rvlab/moebius.hpp"

namespace rvlab {

// nodes/weights for Gauss-Legendre on [-1, 1]
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Planar quadrature rule: integrates F(z) dx dy over a fixed region.
struct QuadratureRule {
  struct Node {
    cplx z;
    double w;
  };
  std::vector<Node> nodes;

  double integrate(const std::function<double(cplx)>& f) const {
    double s = 0;
    for (const auto& n : nodes) s += n.w * f(n.z);
    return s;
  }
  cplx integrate_complex(const std::function<cplx(cplx)>& f) const {
    cplx s = 0;
    for (const auto& n : nodes) s += n.w * f(n.z);
    return s;
  }

  // octagon fundamental domain in the disk model: 8 polar slices,
  // n_phi x n_r Gauss-Legendre points each
  static QuadratureRule octagon(const OctagonDomain& dom, int n_phi, int n_r);
  // cyclic-group fundamental annulus 1 <= |z| < lambda2 in the half-plane
  static QuadratureRule annulus(double lambda2, int n_r, int n_theta);
  // axis-aligned box [x0,x1] x [y0,y1]
  static QuadratureRule box(double x0, double x1, double y0, double y1, int nx, int ny);
};

struct MonteCarloEstimate {
  double value = 0;
  double std_error = 0;
  std::size_t samples = 0;
};

// rejection-sampled Monte Carlo integral of F(z) dx dy over the octagon
MonteCarloEstimate mc_octagon_integral(const OctagonDomain& dom,
                                       const std::function<double(cplx)>& f,
                                       std::size_t n_samples, std::uint64_t seed);

}  // namespace rvlab
