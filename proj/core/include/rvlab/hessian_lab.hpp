#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "rvlab/beltrami.hpp"
#include "rvlab/corrected_vr.hpp"
#include "rvlab/pullback.hpp"
#include "rvlab/quad_differential.hpp"
#include "rvlab/quadrature.hpp"

namespace rvlab {

// phi(z) = sum_j c_j / (z - q_j)^4 with poles strictly below the real axis.
// Pairings between these have a closed form through the weight-4 reproducing
// identity, so they serve as exactly-calibrated test directions.
struct RationalDirection {
  std::vector<cplx> poles;
  std::vector<cplx> coeffs;

  cplx eval(cplx z) const;
  QuadDifferential differential() const;
  bool is_zero() const;
};

RationalDirection operator*(double s, const RationalDirection& d);
RationalDirection operator+(const RationalDirection& a, const RationalDirection& b);
RationalDirection operator-(const RationalDirection& a, const RationalDirection& b);

// <<a, b>> = 2 Re sum_{j,k} conj(c_k) (pi/12) c_j (conj(q_k) - q_j)^{-4}
double rational_inner_exact(const RationalDirection& a, const RationalDirection& b);
Eigen::MatrixXd rational_gram(const std::vector<RationalDirection>& dirs);

// seeded single-pole draws with enforced pole separation, Cholesky-orthonormalized
// against the exact Gram
std::vector<RationalDirection> orthonormal_directions(int count, std::uint64_t seed);

// tangent vector at the Fuchsian point of the quasi-Fuchsian product: one
// direction per conformal end
struct TangentPair {
  RationalDirection plus, minus;
  Eigen::VectorXd plus_coeffs, minus_coeffs;  // in the owning lab's basis
};

enum class End { plus_end, minus_end };

struct BersOptions {
  int grid_n = 512;
  double half_width = 16;
  double base_amplitude = 0.02;  // ||mu|| of the widest FD step, as a fraction of the cap
  int levels = 3;                // FD amplitudes T, T/2, ..., Richardson on the finest two
  double mu_cap = 0.9;
  // measurement window, away from the axis and from the grid edge
  double window_x = 4.0;
  double window_y_lo = 0.75;
  double window_y_hi = 2.5;
  SolverOptions solver;
};

struct LinearResponse {
  MetricField response;  // extrapolated D II0, populated on the window, zero elsewhere
  MetricField expected;  // (1/4)(phi_minus - phi_plus) sampled on the same nodes
  std::vector<double> t_steps;
  std::vector<double> step_errors;  // window L2 distance of each D(t_k) to the extrapolation
  double response_norm = 0;
  double expected_norm = 0;
  double rel_l2_error = 0;
  Eigen::VectorXd coeffs;          // least-squares projection on the lab basis
  double projection_residual = 0;  // relative to response_norm
};

// II0 of the deformed structure at one end: the relative Beltrami coefficient
// t * (mu(v_far) - mu(v_near)) reflected into the opposite half-plane, the
// normalized solution restricted to the undeformed side, II0 = -Re(S dz^2)
MetricField qf_ii0(const TangentPair& pair, double t, const BersOptions& opts,
                   End end = End::plus_end);

class HessianLab {
 public:
  HessianLab(int basis_size, std::uint64_t seed, BersOptions opts = BersOptions{});

  int size() const { return static_cast<int>(basis_.size()); }
  const std::vector<RationalDirection>& basis() const { return basis_; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  const BersOptions& options() const { return opts_; }

  RationalDirection combine(const Eigen::VectorXd& coeffs) const;
  TangentPair pair(const Eigen::VectorXd& plus, const Eigen::VectorXd& minus) const;
  TangentPair one_sided(int j) const;      // (e_j, 0)
  TangentPair diagonal(int j) const;       // (e_j, e_j)
  TangentPair anti_diagonal(int j) const;  // (e_j, -e_j)

  // central differences of qf_ii0 in t with Richardson extrapolation
  LinearResponse dii0_linear_response(const TangentPair& dir, End end) const;

  // Hess V_R(v, w) = -(1/4)(<<v+, D II0+(w)>> + <<v-, D II0-(w)>>) from
  // measured responses, inner products taken through the exact Gram
  double vr_hessian_fd(const TangentPair& v, const TangentPair& w) const;
  double hessian_from_responses(const TangentPair& v, const LinearResponse& plus_of_w,
                                const LinearResponse& minus_of_w) const;

  // least-squares RQ projection of a measured field over the window nodes
  Eigen::VectorXd project(const MetricField& field, double* rel_residual = nullptr) const;

  // window L2 norm of a direction sampled like a measured response; reference
  // scale for directions whose expected response vanishes
  double window_norm(const RationalDirection& d) const;

 private:
  std::vector<RationalDirection> basis_;
  Eigen::MatrixXd gram_;
  BersOptions opts_;
};

// first variation dV_R(v) = -(1/4) <<v, II0>> over the rule's region; the
// II0 grid is sampled bicubically at the quadrature nodes
double vr_first_variation(const RQVector& v, const MetricField& ii0, const QuadratureRule& rule);

struct AcylindricalHessianResult {
  double value = 0;
  bool positive = false;
};

// (1/16) <v, v - dsigma v>; non-positive values are flagged, marking a
// violation of the contraction bound
AcylindricalHessianResult acylindrical_hessian(const SkinningOperator& s,
                                               const Eigen::VectorXd& v);

}  // namespace rvlab
