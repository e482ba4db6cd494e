#include "rvlab/corrected_vr.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace rvlab {

SkinningOperator SkinningOperator::zero(int dim) {
  SkinningOperator s;
  s.m = Eigen::MatrixXd::Zero(dim, dim);
  s.symmetric = true;
  s.spectral_bound = 0;
  return s;
}

SkinningOperator SkinningOperator::scalar(int dim, double lambda) {
  SkinningOperator s;
  s.m = lambda * Eigen::MatrixXd::Identity(dim, dim);
  s.symmetric = true;
  s.spectral_bound = std::abs(lambda);
  return s;
}

SkinningOperator SkinningOperator::symmetric_with_spectrum(const std::vector<double>& spectrum,
                                                           std::uint64_t seed) {
  int dim = static_cast<int>(spectrum.size());
  if (dim < 1) throw std::invalid_argument("SkinningOperator: empty spectrum");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::VectorXd d(dim);
  for (int i = 0; i < dim; ++i) d(i) = spectrum[i];
  SkinningOperator s;
  s.m = q.transpose() * d.asDiagonal() * q;
  s.symmetric = true;
  s.spectral_bound = 0;
  for (double lam : spectrum) s.spectral_bound = std::max(s.spectral_bound, std::abs(lam));
  return s;
}

SkinningOperator SkinningOperator::random_contraction(int dim, double radius,
                                                      std::uint64_t seed) {
  if (radius < 0 || radius >= 1)
    throw std::invalid_argument("SkinningOperator: contraction needs radius in [0, 1)");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<double> spectrum(dim);
  for (double& lam : spectrum) lam = u(rng);
  return symmetric_with_spectrum(spectrum, rng());
}

double corrected_vr(double vr_m, double vr_product) { return vr_m - 0.5 * vr_product; }

CorrectedHessianResult corrected_hessian(const SkinningOperator& s, const Eigen::VectorXd& v) {
  if (v.size() != s.m.rows() || s.m.rows() != s.m.cols())
    throw std::invalid_argument("corrected_hessian: dimension mismatch");
  CorrectedHessianResult r;
  Eigen::VectorXd sv = s.m * v;
  r.raw = (v + sv).dot(v - sv) / 32.0;
  Eigen::VectorXd sym_sv = s.symmetric_part() * v;
  r.symmetrized = (v + sym_sv).dot(v - sym_sv) / 32.0;
  r.positive_raw = r.raw > 0;
  r.positive_symmetrized = r.symmetrized > 0;
  return r;
}

double corrected_first_variation(const Eigen::VectorXd& v, const Eigen::VectorXd& ii0_plus,
                                 const Eigen::VectorXd& ii0_minus, const SkinningOperator& s) {
  if (v.size() != ii0_plus.size() || v.size() != ii0_minus.size() || v.size() != s.m.rows())
    throw std::invalid_argument("corrected_first_variation: dimension mismatch");
  return (-v.dot(ii0_plus) + (s.m * v).dot(ii0_minus)) / 8.0;
}

GluingReport gluing_identity_check(const GluingDescription& g, double tol) {
  if (g.pieces.empty()) throw std::invalid_argument("gluing: no pieces");
  std::set<std::string> piece_ids;
  for (const auto& p : g.pieces)
    if (!piece_ids.insert(p.id).second)
      throw std::invalid_argument("gluing: duplicate piece id '" + p.id + "'");
  for (const auto& itf : g.interfaces) {
    if (itf.piece_a == itf.piece_b)
      throw std::invalid_argument("gluing: interface '" + itf.id + "' glues a piece to itself");
    if (!piece_ids.count(itf.piece_a) || !piece_ids.count(itf.piece_b))
      throw std::invalid_argument("gluing: interface '" + itf.id +
                                  "' references an unknown piece");
  }

  GluingReport rep;
  rep.tol = tol;
  double sum_vr = 0;
  for (const auto& p : g.pieces) sum_vr += p.vr;
  double sum_itf = 0;
  for (const auto& itf : g.interfaces) sum_itf += itf.vr_product;
  rep.residual = g.closed_volume - (sum_vr - sum_itf);

  // split each interface half/half into the two corrected volumes it touches;
  // the telescoped sum must agree with the direct form identically
  double sum_corrected = 0;
  for (const auto& p : g.pieces) {
    double touching = 0;
    for (const auto& itf : g.interfaces)
      if (itf.piece_a == p.id || itf.piece_b == p.id) touching += itf.vr_product;
    sum_corrected += corrected_vr(p.vr, touching);
  }
  rep.corrected_residual = g.closed_volume - sum_corrected;
  rep.pass = std::abs(rep.residual) < tol && std::abs(rep.corrected_residual) < tol;
  return rep;
}

}  // namespace rvlab
