#pragma once

#include <string>
#include <vector>

#include "rvlab/moebius.hpp"

namespace rvlab {

// Regular n x n complex-sample grid over the square
// [cx - hw, cx + hw) x [cy - hw, cy + hw), row-major, index [iy*n + ix],
// sample j at coordinate -hw + j*dx (dx = 2 hw / n).
struct ComplexGrid {
  int n = 0;
  double half_width = 0;
  cplx center = 0;
  std::vector<cplx> v;

  ComplexGrid() = default;
  ComplexGrid(int n_, double half_width_, cplx center_ = 0)
      : n(n_), half_width(half_width_), center(center_),
        v(static_cast<std::size_t>(n_) * n_, cplx(0, 0)) {}

  double spacing() const { return 2 * half_width / n; }
  cplx coord(int ix, int iy) const {
    double dx = spacing();
    return center + cplx(-half_width + ix * dx, -half_width + iy * dx);
  }
  cplx& at(int ix, int iy) { return v[static_cast<std::size_t>(iy) * n + ix]; }
  const cplx& at(int ix, int iy) const { return v[static_cast<std::size_t>(iy) * n + ix]; }

  // nearest row index for a given imaginary part
  int row_of(double y) const;
  int col_of(double x) const;

  // bicubic (Catmull-Rom) interpolation; throws std::out_of_range when z
  // is outside the sampled rectangle (minus the one-cell border)
  cplx interp(cplx z) const;

  bool same_layout(const ComplexGrid& o) const {
    return n == o.n && half_width == o.half_width && center == o.center;
  }
};

// flat binary format: magic "RVGRID1\0", i64 n, f64 half_width,
// f64 center_re, f64 center_im, then n*n complex<f64> row-major
void write_grid(const ComplexGrid& g, const std::string& path);
ComplexGrid read_grid(const std::string& path);

}  // namespace rvlab
