#include <doctest.h>

#include <cmath>

#include "rvlab/beltrami.hpp"

using namespace rvlab;

TEST_CASE("zero coefficient returns the identity") {
  BeltramiField mu = BeltramiField::from_function([](cplx) { return cplx(0, 0); }, 128, 8.0);
  QCMap f = solve_beltrami(mu);
  CHECK(f.iterations <= 1);
  double sup = 0;
  for (int iy = 0; iy < f.f.n; ++iy)
    for (int ix = 0; ix < f.f.n; ++ix)
      sup = std::max(sup, std::abs(f.f.at(ix, iy) - f.f.coord(ix, iy)));
  CHECK(sup < 1e-12);
  CHECK(f.orientation_margin() > 0.9);
}

TEST_CASE("radial coefficient matches the closed-form solution") {
  // mu = (1/2) z / conj(z) on the unit disk maps to w = z |z|^2 there, w = z outside
  auto mu_fn = [](cplx z) -> cplx {
    if (z == cplx(0, 0) || std::abs(z) >= 1.0) return 0;
    return 0.5 * z / std::conj(z);
  };
  BeltramiField mu = BeltramiField::from_function(mu_fn, 256, 8.0);
  QCMap f = solve_beltrami(mu);

  double num = 0, den = 0;
  for (int iy = 0; iy < f.f.n; ++iy)
    for (int ix = 0; ix < f.f.n; ++ix) {
      cplx z = f.f.coord(ix, iy);
      cplx want = std::abs(z) <= 1.0 ? z * std::norm(z) : z;
      num += std::norm(f.f.at(ix, iy) - want);
      den += std::norm(want);
    }
  CHECK(std::sqrt(num / den) < 5e-3);
  // no orientation check here: f_z and f_zbar both vanish at the origin for
  // this map, so the margin sits at numerical zero by construction
  CHECK(f.residual_l2 < 1e-8);
}

TEST_CASE("normalized representative fixes 0 and 1") {
  auto mu_fn = [](cplx z) { return 0.4 * std::exp(-std::norm(z)); };
  BeltramiField mu = BeltramiField::from_function(mu_fn, 256, 8.0);
  QCMap f = solve_beltrami(mu);
  QCMap n = f.normalized_01();
  CHECK(std::abs(n(cplx(0, 0))) < 1e-9);
  CHECK(std::abs(n(cplx(1, 0)) - cplx(1, 0)) < 1e-9);
}

TEST_CASE("coefficient cap is enforced") {
  CHECK_THROWS(BeltramiField::from_function([](cplx) { return cplx(0.95, 0); }, 64, 4.0));
}

TEST_CASE("support radius sees the actual support") {
  auto mu_fn = [](cplx z) { return std::abs(z) < 2.0 ? cplx(0.3, 0) : cplx(0, 0); };
  BeltramiField mu = BeltramiField::from_function(mu_fn, 128, 8.0);
  CHECK(mu.support_radius() > 1.8);
  CHECK(mu.support_radius() < 2.2);
  CHECK(mu.sup_norm == doctest::Approx(0.3).epsilon(1e-12));
}
