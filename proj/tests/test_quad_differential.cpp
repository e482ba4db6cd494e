#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "rvlab/density.hpp"
#include "rvlab/quad_differential.hpp"
#include "rvlab/quadrature.hpp"

using namespace rvlab;

namespace {

std::vector<cplx> sample_points() {
  std::vector<cplx> pts;
  for (int k = 0; k < 12; ++k) {
    double r = 0.05 + 0.25 * (k % 4) / 4.0;
    double th = 0.5236 * k;
    pts.push_back(std::polar(r, th));
  }
  return pts;
}

}  // namespace

TEST_CASE("cyclic exact differential is automorphic to rounding") {
  double l2 = std::exp(1.2);
  FuchsianGroup g = FuchsianGroup::cyclic(l2);
  for (int k : {0, 1, 3}) {
    QuadDifferential q = QuadDifferential::cyclic_exact(l2, k);
    std::vector<cplx> pts = {{0.3, 1.1}, {-0.8, 2.0}, {1.4, 0.7}, {0.05, 3.2}};
    CHECK(q.automorphy_residual(g, pts) < 1e-12);
  }
}

TEST_CASE("poincare series residual decreases with the word-length cutoff") {
  FuchsianGroup g = FuchsianGroup::genus2_octagon();
  auto pts = sample_points();
  std::vector<cplx> seed = {1.0};
  double prev = -1;
  for (int cutoff : {1, 2, 3}) {
    QuadDifferential q = QuadDifferential::poincare_series(g, seed, cutoff);
    double res = q.automorphy_residual(g, pts);
    if (prev >= 0) CHECK(res < 0.7 * prev);
    prev = res;
  }
  CHECK(prev < 0.05);
}

TEST_CASE("poincare series of monomial seeds span a 3-dimensional space") {
  FuchsianGroup g = FuchsianGroup::genus2_octagon();
  auto rule = QuadratureRule::octagon(*g.octagon, 5, 5);

  Eigen::MatrixXcd m(8, static_cast<int>(rule.nodes.size()));
  for (int k = 0; k < 8; ++k) {
    std::vector<cplx> seed(static_cast<std::size_t>(k) + 1, 0.0);
    seed[k] = 1.0;
    QuadDifferential q = QuadDifferential::poincare_series(g, seed, 4);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const auto& nd = rule.nodes[i];
      double rho = hyperbolic_density(Model::disk, nd.z);
      m(k, static_cast<int>(i)) = q(nd.z) * std::sqrt(nd.w / rho);
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  auto s = svd.singularValues();
  // the drop from the third to the fourth singular value marks the rank
  int widest_gap = 0;
  double best = 0;
  for (int i = 0; i + 1 < s.size(); ++i) {
    double ratio = s(i) / std::max(s(i + 1), 1e-300);
    if (ratio > best) {
      best = ratio;
      widest_gap = i;
    }
  }
  CHECK(widest_gap == 2);
  CHECK(s(2) / s(3) > 10);
}

TEST_CASE("eval_in transports with the weight-4 cocycle") {
  QuadDifferential p = QuadDifferential::polynomial({cplx(1, 0), cplx(0, 0.5)}, Model::disk);
  MoebiusC c = MoebiusC::cayley();
  cplx z(0.4, 1.6);
  cplx want = p(c(z)) * c.derivative(z) * c.derivative(z);
  CHECK(std::abs(p.eval_in(Model::half_plane, z) - want) < 1e-13);
  // native model is a no-op
  CHECK(std::abs(p.eval_in(Model::disk, cplx(0.2, 0.1)) - p(cplx(0.2, 0.1))) < 1e-15);
}

TEST_CASE("rational pole placement is validated") {
  CHECK_THROWS_AS(QuadDifferential::rational_pole(cplx(0, 0.5), 1.0), std::invalid_argument);
  QuadDifferential q = QuadDifferential::rational_pole(cplx(0.2, -0.7), 2.0);
  cplx z(1, 1);
  cplx d = z - cplx(0.2, -0.7);
  CHECK(std::abs(q(z) - 2.0 / (d * d * d * d)) < 1e-14);
}

TEST_CASE("combination is linear") {
  QuadDifferential a = QuadDifferential::rational_pole(cplx(0, -1), 1.0);
  QuadDifferential b = QuadDifferential::rational_pole(cplx(1, -2), cplx(0, 1));
  QuadDifferential s = QuadDifferential::combination({{2.0, a}, {cplx(0, -1), b}});
  cplx z(0.3, 0.8);
  CHECK(std::abs(s(z) - (2.0 * a(z) + cplx(0, -1) * b(z))) < 1e-14);
}

TEST_CASE("rq inner product is symmetric and positive") {
  QuadDifferential a = QuadDifferential::rational_pole(cplx(0, -1), 1.0);
  QuadDifferential b = QuadDifferential::rational_pole(cplx(2, -1.5), 1.0);
  auto rule = QuadratureRule::box(-8, 8, 0.05, 8, 64, 64);
  RQVector va{a}, vb{b};
  double aa = rq_inner_product(va, va, rule, Model::half_plane);
  double ab = rq_inner_product(va, vb, rule, Model::half_plane);
  double ba = rq_inner_product(vb, va, rule, Model::half_plane);
  CHECK(aa > 0);
  CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
  CHECK(std::abs(ab) < aa);
}
