#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "rvlab/corrected_vr.hpp"
#include "rvlab/hessian_lab.hpp"

using namespace rvlab;

TEST_CASE("corrected volume arithmetic") {
  CHECK(corrected_vr(10, 4) == doctest::Approx(8));
  CHECK(corrected_vr(0, 0) == doctest::Approx(0));
  CHECK(corrected_vr(-3, 2) == doctest::Approx(-4));
}

TEST_CASE("scalar skinning operator gives the closed-form hessian") {
  SkinningOperator s = SkinningOperator::scalar(6, 0.9);
  Eigen::VectorXd v = Eigen::VectorXd::Unit(6, 1);
  CorrectedHessianResult h = corrected_hessian(s, v);
  // (1/32) (1 + 0.9)(1 - 0.9) ||v||^2
  CHECK(h.raw == doctest::Approx(0.0059375).epsilon(1e-14));
  CHECK(h.symmetrized == doctest::Approx(h.raw).epsilon(1e-14));
  CHECK(h.positive_raw);
  CHECK(h.positive_symmetrized);
}

TEST_CASE("contractions keep the corrected hessian positive") {
  for (int trial = 0; trial < 25; ++trial) {
    SkinningOperator s = SkinningOperator::random_contraction(12, 0.999, 100 + trial);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s.symmetric_part());
    CHECK(eig.eigenvalues().minCoeff() > -1);
    CHECK(eig.eigenvalues().maxCoeff() < 1);

    std::mt19937_64 rng(200 + trial);
    std::normal_distribution<double> n;
    Eigen::VectorXd v(12);
    for (int i = 0; i < 12; ++i) v(i) = n(rng);
    CorrectedHessianResult h = corrected_hessian(s, v);
    CHECK(h.positive_raw);
    CHECK(h.positive_symmetrized);
  }
}

TEST_CASE("spectrum construction is faithful and detects a planted violation") {
  std::vector<double> spectrum = {1.2, 0.4, -0.3, 0.25, -0.15};
  SkinningOperator s = SkinningOperator::symmetric_with_spectrum(spectrum, 77);
  REQUIRE(s.symmetric);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s.m);
  CHECK(eig.eigenvalues().maxCoeff() == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(eig.eigenvalues().minCoeff() == doctest::Approx(-0.3).epsilon(1e-12));

  // along the top eigenvector the corrected hessian loses positivity
  Eigen::VectorXd top = eig.eigenvectors().col(4);
  CorrectedHessianResult h = corrected_hessian(s, top);
  CHECK(h.raw <= 0);
  CHECK(!h.positive_raw);
  // (1/32)(1 + 1.2)(1 - 1.2) = -0.01375
  CHECK(h.raw == doctest::Approx(-0.01375).epsilon(1e-10));
}

TEST_CASE("first variation telescopes into the hessian value") {
  SkinningOperator s = SkinningOperator::random_contraction(8, 0.8, 5);
  std::mt19937_64 rng(6);
  std::normal_distribution<double> n;
  Eigen::VectorXd v(8);
  for (int i = 0; i < 8; ++i) v(i) = n(rng);

  double t = 1e-3;
  Eigen::VectorXd i0p = -0.25 * t * (v - s.m * v);
  Eigen::VectorXd i0m = 0.25 * t * (v - s.m * v);
  double fv = corrected_first_variation(v, i0p, i0m, s);
  CorrectedHessianResult h = corrected_hessian(s, v);
  CHECK(std::abs(fv - t * h.raw) < 1e-14);
}

TEST_CASE("acylindrical hessian closed forms") {
  Eigen::VectorXd v(4);
  v << 1, -2, 0.5, 3;
  double n2 = v.squaredNorm();

  AcylindricalHessianResult z = acylindrical_hessian(SkinningOperator::zero(4), v);
  CHECK(z.value == doctest::Approx(n2 / 16).epsilon(1e-14));
  CHECK(z.positive);

  AcylindricalHessianResult half = acylindrical_hessian(SkinningOperator::scalar(4, 0.5), v);
  CHECK(half.value == doctest::Approx(n2 / 32).epsilon(1e-14));
  CHECK(half.positive);

  AcylindricalHessianResult bad = acylindrical_hessian(SkinningOperator::scalar(4, 1.2), v);
  CHECK(bad.value < 0);
  CHECK(!bad.positive);
}

TEST_CASE("gluing identity accepts a consistent description and rejects a broken one") {
  GluingDescription g;
  g.pieces = {{"P0", 10, {"I0"}}, {"P1", 7, {"I0", "I1"}}, {"P2", 4, {"I1"}}};
  g.interfaces = {{"I0", 3, "P0", "P1"}, {"I1", 2, "P1", "P2"}};
  g.closed_volume = 10 + 7 + 4 - 3 - 2;

  GluingReport r = gluing_identity_check(g);
  CHECK(r.pass);
  CHECK(std::abs(r.residual) < 1e-12);
  CHECK(std::abs(r.corrected_residual) < 1e-12);

  GluingDescription broken = g;
  broken.closed_volume += 0.5;
  GluingReport rb = gluing_identity_check(broken);
  CHECK(!rb.pass);
  // residual is closed_volume minus the piece sum, so the surplus shows up positive
  CHECK(std::abs(rb.residual - 0.5) < 1e-12);
}

TEST_CASE("malformed gluing descriptions throw") {
  GluingDescription g;
  g.pieces = {{"P0", 10, {"I0"}}};
  g.interfaces = {{"I0", 3, "P0", "P_missing"}};
  g.closed_volume = 7;
  CHECK_THROWS_AS(gluing_identity_check(g), std::invalid_argument);
}
