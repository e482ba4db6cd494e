#include "rvlab/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace rvlab {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration from the Chebyshev-like initial guess
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1 - x * x) * pp * pp);
  }
}

QuadratureRule QuadratureRule::octagon(const OctagonDomain& dom, int n_phi, int n_r) {
  std::vector<double> gx, gw;
  gauss_legendre(n_phi, gx, gw);
  std::vector<double> rx, rw;
  gauss_legendre(n_r, rx, rw);

  QuadratureRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(8) * n_phi * n_r);
  constexpr double sector = std::numbers::pi / 4;
  for (int k = 0; k < 8; ++k) {
    double phi0 = k * sector;
    for (int i = 0; i < n_phi; ++i) {
      double phi = phi0 + gx[i] * sector / 2;
      double wphi = gw[i] * sector / 2;
      double rmax = dom.r_max(phi);
      for (int j = 0; j < n_r; ++j) {
        double r = (rx[j] + 1) * rmax / 2;
        double wr = rw[j] * rmax / 2;
        rule.nodes.push_back({std::polar(r, phi), wphi * wr * r});
      }
    }
  }
  return rule;
}

QuadratureRule QuadratureRule::annulus(double lambda2, int n_r, int n_theta) {
  if (!(lambda2 > 1)) throw std::invalid_argument("annulus: lambda2 must exceed 1");
  std::vector<double> rx, rw, tx, tw;
  gauss_legendre(n_r, rx, rw);
  gauss_legendre(n_theta, tx, tw);
  QuadratureRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(n_r) * n_theta);
  for (int i = 0; i < n_r; ++i) {
    double r = 1 + (rx[i] + 1) * (lambda2 - 1) / 2;
    double wr = rw[i] * (lambda2 - 1) / 2;
    for (int j = 0; j < n_theta; ++j) {
      double th = (tx[j] + 1) * std::numbers::pi / 2;
      double wt = tw[j] * std::numbers::pi / 2;
      rule.nodes.push_back({std::polar(r, th), wr * wt * r});
    }
  }
  return rule;
}

QuadratureRule QuadratureRule::box(double x0, double x1, double y0, double y1, int nx, int ny) {
  std::vector<double> ax, aw, bx, bw;
  gauss_legendre(nx, ax, aw);
  gauss_legendre(ny, bx, bw);
  QuadratureRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(nx) * ny);
  for (int i = 0; i < nx; ++i) {
    double x = x0 + (ax[i] + 1) * (x1 - x0) / 2;
    for (int j = 0; j < ny; ++j) {
      double y = y0 + (bx[j] + 1) * (y1 - y0) / 2;
      rule.nodes.push_back({{x, y}, aw[i] * bw[j] * (x1 - x0) * (y1 - y0) / 4});
    }
  }
  return rule;
}

MonteCarloEstimate mc_octagon_integral(const OctagonDomain& dom,
                                       const std::function<double(cplx)>& f,
                                       std::size_t n_samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double R = dom.vertex_radius;
  std::uniform_real_distribution<double> U(-R, R);
  double box_area = 4 * R * R;
  double sum = 0, sum2 = 0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    cplx z{U(rng), U(rng)};
    double v = dom.contains(z) ? f(z) : 0.0;
    sum += v;
    sum2 += v * v;
  }
  double n = static_cast<double>(n_samples);
  double mean = sum / n;
  double var = (sum2 / n - mean * mean) / (n - 1);
  return {mean * box_area, std::sqrt(std::max(var, 0.0)) * box_area, n_samples};
}

}  // namespace rvlab
