#pragma once

#include <stdexcept>

#include "rvlab/moebius.hpp"

namespace rvlab {

enum class Model { half_plane, disk };

// Hyperbolic area density: metric = rho(z) |dz|^2, curvature -1.
// half-plane: 1/y^2; disk: 4/(1-|z|^2)^2.
inline double hyperbolic_density(Model model, cplx z) {
  if (model == Model::half_plane) {
    double y = z.imag();
    if (!(y > 0)) throw std::domain_error("hyperbolic_density: point not in the upper half-plane");
    return 1.0 / (y * y);
  }
  double r2 = std::norm(z);
  if (!(r2 < 1)) throw std::domain_error("hyperbolic_density: point not in the unit disk");
  double t = 1.0 - r2;
  return 4.0 / (t * t);
}

inline bool in_model_domain(Model model, cplx z) {
  return model == Model::half_plane ? z.imag() > 0 : std::norm(z) < 1;
}

}  // namespace rvlab
