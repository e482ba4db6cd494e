#include <doctest.h>

#include <cstdio>
#include <stdexcept>
#include <string>

#include "rvlab/grid.hpp"

using namespace rvlab;

TEST_CASE("grid layout and coordinate lookup") {
  ComplexGrid g(8, 2.0, cplx(1, 3));
  CHECK(g.spacing() == doctest::Approx(0.5));
  CHECK(g.coord(0, 0) == cplx(-1, 1));
  CHECK(g.coord(4, 4) == cplx(1, 3));
  CHECK(g.col_of(1.0) == 4);
  CHECK(g.row_of(3.0) == 4);
  g.at(3, 5) = cplx(7, -2);
  CHECK(g.v[5 * 8 + 3] == cplx(7, -2));
}

TEST_CASE("bicubic interpolation reproduces quadratics") {
  ComplexGrid g(32, 4.0);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      cplx z = g.coord(ix, iy);
      g.at(ix, iy) = z * z + cplx(0.5, 1.0) * z;
    }
  for (cplx z : {cplx(0.13, -0.37), cplx(1.9, 2.2), cplx(-2.7, 0.61)}) {
    cplx want = z * z + cplx(0.5, 1.0) * z;
    CHECK(std::abs(g.interp(z) - want) < 1e-12);
  }
  CHECK_THROWS_AS(g.interp(cplx(3.99, 0)), std::out_of_range);
  CHECK_THROWS_AS(g.interp(cplx(0, -4.2)), std::out_of_range);
}

TEST_CASE("grid file round-trip is exact") {
  ComplexGrid g(16, 1.5, cplx(0.25, -0.75));
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) g.at(ix, iy) = cplx(ix * 0.1, iy * -0.2) + g.coord(ix, iy);

  std::string path = "grid_roundtrip.tmp";
  write_grid(g, path);
  ComplexGrid back = read_grid(path);
  std::remove(path.c_str());

  REQUIRE(back.same_layout(g));
  for (std::size_t i = 0; i < g.v.size(); ++i) CHECK(back.v[i] == g.v[i]);
}

TEST_CASE("reading a missing grid file fails") {
  CHECK_THROWS(read_grid("no_such_grid_file.bin"));
}
