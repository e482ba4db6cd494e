#include "rvlab/grid.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace rvlab {

int ComplexGrid::row_of(double y) const {
  return static_cast<int>(std::lround((y - center.imag() + half_width) / spacing()));
}

int ComplexGrid::col_of(double x) const {
  return static_cast<int>(std::lround((x - center.real() + half_width) / spacing()));
}

namespace {
// Catmull-Rom weights for fractional offset t against samples at -1,0,1,2
inline void cr_weights(double t, double w[4]) {
  double t2 = t * t, t3 = t2 * t;
  w[0] = 0.5 * (-t3 + 2 * t2 - t);
  w[1] = 0.5 * (3 * t3 - 5 * t2 + 2);
  w[2] = 0.5 * (-3 * t3 + 4 * t2 + t);
  w[3] = 0.5 * (t3 - t2);
}
}  // namespace

cplx ComplexGrid::interp(cplx z) const {
  double dx = spacing();
  double fx = (z.real() - center.real() + half_width) / dx;
  double fy = (z.imag() - center.imag() + half_width) / dx;
  int ix = static_cast<int>(std::floor(fx));
  int iy = static_cast<int>(std::floor(fy));
  if (ix < 1 || ix > n - 3 || iy < 1 || iy > n - 3)
    throw std::out_of_range("ComplexGrid::interp: point outside the sampled region");
  double tx = fx - ix, ty = fy - iy;
  double wx[4], wy[4];
  cr_weights(tx, wx);
  cr_weights(ty, wy);
  cplx s = 0;
  for (int j = 0; j < 4; ++j) {
    cplx row = 0;
    for (int i = 0; i < 4; ++i) row += wx[i] * at(ix - 1 + i, iy - 1 + j);
    s += wy[j] * row;
  }
  return s;
}

void write_grid(const ComplexGrid& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_grid: cannot open " + path);
  const char magic[8] = {'R', 'V', 'G', 'R', 'I', 'D', '1', '\0'};
  out.write(magic, 8);
  std::int64_t n = g.n;
  out.write(reinterpret_cast<const char*>(&n), 8);
  double hw = g.half_width, cx = g.center.real(), cy = g.center.imag();
  out.write(reinterpret_cast<const char*>(&hw), 8);
  out.write(reinterpret_cast<const char*>(&cx), 8);
  out.write(reinterpret_cast<const char*>(&cy), 8);
  out.write(reinterpret_cast<const char*>(g.v.data()),
            static_cast<std::streamsize>(g.v.size() * sizeof(cplx)));
  if (!out) throw std::runtime_error("write_grid: short write to " + path);
}

ComplexGrid read_grid(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_grid: cannot open " + path);
  char magic[8];
  in.read(magic, 8);
  if (std::memcmp(magic, "RVGRID1\0", 8) != 0)
    throw std::runtime_error("read_grid: bad magic in " + path);
  std::int64_t n = 0;
  double hw = 0, cx = 0, cy = 0;
  in.read(reinterpret_cast<char*>(&n), 8);
  in.read(reinterpret_cast<char*>(&hw), 8);
  in.read(reinterpret_cast<char*>(&cx), 8);
  in.read(reinterpret_cast<char*>(&cy), 8);
  if (!in || n <= 0 || n > (1 << 16)) throw std::runtime_error("read_grid: bad header in " + path);
  ComplexGrid g(static_cast<int>(n), hw, {cx, cy});
  in.read(reinterpret_cast<char*>(g.v.data()),
          static_cast<std::streamsize>(g.v.size() * sizeof(cplx)));
  if (!in) throw std::runtime_error("read_grid: truncated body in " + path);
  return g;
}

}  // namespace rvlab
