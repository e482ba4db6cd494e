#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace rvlab {

// derivative of the skinning map acting on tangent coefficients over an
// orthonormal direction basis
struct SkinningOperator {
  Eigen::MatrixXd m;
  bool symmetric = false;
  double spectral_bound = -1;  // certified bound on the symmetric-part spectrum, < 0 if unknown

  int dim() const { return static_cast<int>(m.rows()); }
  Eigen::MatrixXd symmetric_part() const { return 0.5 * (m + m.transpose()); }

  static SkinningOperator zero(int dim);
  static SkinningOperator scalar(int dim, double lambda);
  // Q^T diag(spectrum) Q with a seeded random orthogonal Q
  static SkinningOperator symmetric_with_spectrum(const std::vector<double>& spectrum,
                                                  std::uint64_t seed);
  // symmetric operator with spectrum drawn uniformly from (-radius, radius)
  static SkinningOperator random_contraction(int dim, double radius, std::uint64_t seed);
};

// corrected renormalized volume: the manifold value minus half the value of
// the skinning product region
double corrected_vr(double vr_m, double vr_product);

struct CorrectedHessianResult {
  double raw = 0;          // (1/32) <v + Sv, v - Sv>
  double symmetrized = 0;  // same with S replaced by its symmetric part
  bool positive_raw = false;
  bool positive_symmetrized = false;
};

CorrectedHessianResult corrected_hessian(const SkinningOperator& s, const Eigen::VectorXd& v);

// 8 dVbar(v) = -<v, II0+> + <dsigma v, II0->, all in basis coefficients
double corrected_first_variation(const Eigen::VectorXd& v, const Eigen::VectorXd& ii0_plus,
                                 const Eigen::VectorXd& ii0_minus, const SkinningOperator& s);

struct GluingPiece {
  std::string id;
  double vr = 0;
  std::vector<std::string> boundary_ids;
};

struct GluingInterface {
  std::string id;
  double vr_product = 0;
  std::string piece_a, piece_b;
};

struct GluingDescription {
  std::vector<GluingPiece> pieces;
  std::vector<GluingInterface> interfaces;
  double closed_volume = 0;
};

struct GluingReport {
  bool pass = false;
  double residual = 0;            // vol - (sum piece VR - sum interface VR)
  double corrected_residual = 0;  // vol - sum of corrected VRs (interface split half/half)
  double tol = 0;
};

// checks vol(M) = sum V_R(pieces) - sum V_R(interfaces), and the equivalent
// telescoped form in corrected volumes; throws std::invalid_argument on a
// malformed description (unknown piece ids, dangling interfaces)
GluingReport gluing_identity_check(const GluingDescription& g, double tol = 1e-12);

}  // namespace rvlab
