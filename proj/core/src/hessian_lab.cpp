#include "rvlab/hessian_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "rvlab/schwarzian.hpp"

namespace rvlab {

cplx RationalDirection::eval(cplx z) const {
  cplx s = 0;
  for (std::size_t j = 0; j < poles.size(); ++j) {
    cplx d = z - poles[j];
    cplx d2 = d * d;
    s += coeffs[j] / (d2 * d2);
  }
  return s;
}

QuadDifferential RationalDirection::differential() const {
  QuadDifferential q;
  q.model = Model::half_plane;
  q.kind = "rational";
  RationalDirection copy = *this;
  q.eval = [copy](cplx z) { return copy.eval(z); };
  return q;
}

bool RationalDirection::is_zero() const {
  for (const cplx& c : coeffs)
    if (c != cplx(0, 0)) return false;
  return true;
}

RationalDirection operator*(double s, const RationalDirection& d) {
  RationalDirection out = d;
  for (cplx& c : out.coeffs) c *= s;
  return out;
}

RationalDirection operator+(const RationalDirection& a, const RationalDirection& b) {
  RationalDirection out = a;
  out.poles.insert(out.poles.end(), b.poles.begin(), b.poles.end());
  out.coeffs.insert(out.coeffs.end(), b.coeffs.begin(), b.coeffs.end());
  return out;
}

RationalDirection operator-(const RationalDirection& a, const RationalDirection& b) {
  return a + (-1.0 * b);
}

double rational_inner_exact(const RationalDirection& a, const RationalDirection& b) {
  double s = 0;
  for (std::size_t k = 0; k < b.poles.size(); ++k) {
    cplx zk = std::conj(b.poles[k]);  // mirror point in the upper half-plane
    s += 2 * std::real(std::conj(b.coeffs[k]) * (std::numbers::pi / 12.0) * a.eval(zk));
  }
  return s;
}

Eigen::MatrixXd rational_gram(const std::vector<RationalDirection>& dirs) {
  int n = static_cast<int>(dirs.size());
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      g(i, j) = rational_inner_exact(dirs[i], dirs[j]);
      g(j, i) = g(i, j);
    }
  return g;
}

std::vector<RationalDirection> orthonormal_directions(int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("orthonormal_directions: count must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(-3.0, 3.0), ud(0.7, 3.0),
      uphase(0.0, 2 * std::numbers::pi);

  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<RationalDirection> raw;
    while (static_cast<int>(raw.size()) < count) {
      cplx pole(ux(rng), -ud(rng));
      bool clear = true;
      for (const auto& r : raw)
        if (std::abs(pole - r.poles[0]) < 0.4) clear = false;
      if (!clear) continue;
      RationalDirection d;
      d.poles = {pole};
      d.coeffs = {std::polar(1.0, uphase(rng))};
      raw.push_back(d);
    }
    Eigen::MatrixXd g = rational_gram(raw);
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    if (llt.info() != Eigen::Success) continue;
    Eigen::MatrixXd l = llt.matrixL();
    if (l.diagonal().minCoeff() < 1e-4) continue;
    // columns of L^{-T} give combinations with identity Gram
    Eigen::MatrixXd x =
        l.transpose().triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(count, count));
    std::vector<RationalDirection> basis(count);
    for (int i = 0; i < count; ++i) {
      RationalDirection f;
      for (int j = 0; j < count; ++j) {
        f.poles.push_back(raw[j].poles[0]);
        f.coeffs.push_back(x(j, i) * raw[j].coeffs[0]);
      }
      basis[i] = f;
    }
    return basis;
  }
  throw std::runtime_error("orthonormal_directions: could not draw a well-conditioned basis");
}

namespace {

RationalDirection end_difference(const TangentPair& pair, End end) {
  return end == End::plus_end ? pair.minus - pair.plus : pair.plus - pair.minus;
}

// harmonic Beltrami field of the difference direction, reflected into the
// lower half-plane: mu(zeta) = t (Im zeta)^2 d(conj zeta) / 2 for Im zeta < 0
std::function<cplx(cplx)> reflected_sampler(const RationalDirection& d, double t) {
  return [d, t](cplx zeta) -> cplx {
    double y = zeta.imag();
    if (y >= 0) return 0;
    return t * 0.5 * y * y * d.eval(std::conj(zeta));
  };
}

double sampler_sup(const std::function<cplx(cplx)>& f, int n, double half_width) {
  ComplexGrid probe(n, half_width, 0);
  double sup = 0;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) sup = std::max(sup, std::abs(f(probe.coord(ix, iy))));
  return sup;
}

struct Window {
  std::vector<int> ix, iy;  // flattened node lists (parallel arrays)
  std::vector<std::size_t> idx;
};

Window window_nodes(const ComplexGrid& g, const BersOptions& o) {
  Window w;
  for (int iy = 0; iy < g.n; ++iy) {
    double y = g.coord(0, iy).imag();
    if (y < o.window_y_lo || y > o.window_y_hi) continue;
    for (int ix = 2; ix < g.n - 2; ++ix) {
      double x = g.coord(ix, iy).real();
      if (x < -o.window_x || x > o.window_x) continue;
      w.ix.push_back(ix);
      w.iy.push_back(iy);
      w.idx.push_back(static_cast<std::size_t>(iy) * g.n + ix);
    }
  }
  return w;
}

// Schwarzian of the solved map on the upper half-plane, as the differential
// psi with II0 = Re(psi dz^2): psi = -S, stored as h20 = psi / 2
void accumulate_ii0(const QCMap& q, MetricField& out) {
  for (int iy = 0; iy < q.f.n; ++iy) {
    if (q.f.coord(0, iy).imag() <= 0) continue;
    for (int ix = 2; ix < q.f.n - 2; ++ix)
      out.h20.at(ix, iy) = -schwarzian_stencil(q.f, ix, iy) / 2.0;
  }
}

}  // namespace

MetricField qf_ii0(const TangentPair& pair, double t, const BersOptions& opts, End end) {
  MetricField out;
  out.model = Model::half_plane;
  out.h20 = ComplexGrid(opts.grid_n, opts.half_width, 0);
  out.h11 = out.h20;

  RationalDirection d = end_difference(pair, end);
  BeltramiField mu = BeltramiField::from_function(reflected_sampler(d, t), opts.grid_n,
                                                  opts.half_width, 0, opts.mu_cap);
  QCMap q = solve_beltrami(mu, opts.solver);
  accumulate_ii0(q, out);
  return out;
}

HessianLab::HessianLab(int basis_size, std::uint64_t seed, BersOptions opts)
    : basis_(orthonormal_directions(basis_size, seed)), opts_(opts) {
  gram_ = rational_gram(basis_);
}

RationalDirection HessianLab::combine(const Eigen::VectorXd& coeffs) const {
  if (coeffs.size() != size()) throw std::invalid_argument("combine: coefficient size mismatch");
  RationalDirection out;
  for (int j = 0; j < size(); ++j) {
    const RationalDirection& b = basis_[j];
    for (std::size_t k = 0; k < b.poles.size(); ++k) {
      out.poles.push_back(b.poles[k]);
      out.coeffs.push_back(coeffs(j) * b.coeffs[k]);
    }
  }
  return out;
}

TangentPair HessianLab::pair(const Eigen::VectorXd& plus, const Eigen::VectorXd& minus) const {
  TangentPair p;
  p.plus = combine(plus);
  p.minus = combine(minus);
  p.plus_coeffs = plus;
  p.minus_coeffs = minus;
  return p;
}

TangentPair HessianLab::one_sided(int j) const {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(size());
  e(j) = 1;
  return pair(e, Eigen::VectorXd::Zero(size()));
}

TangentPair HessianLab::diagonal(int j) const {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(size());
  e(j) = 1;
  return pair(e, e);
}

TangentPair HessianLab::anti_diagonal(int j) const {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(size());
  e(j) = 1;
  return pair(e, -e);
}

LinearResponse HessianLab::dii0_linear_response(const TangentPair& dir, End end) const {
  LinearResponse lr;
  lr.response.model = Model::half_plane;
  lr.response.h20 = ComplexGrid(opts_.grid_n, opts_.half_width, 0);
  lr.response.h11 = lr.response.h20;
  lr.expected = lr.response;

  RationalDirection d = end_difference(dir, end);
  RationalDirection target = 0.25 * d;

  double sup1 = d.is_zero() ? 0.0
                            : sampler_sup(reflected_sampler(d, 1.0), opts_.grid_n / 2,
                                          opts_.half_width);
  double t_base = sup1 > 0 ? opts_.base_amplitude * opts_.mu_cap / sup1 : 1.0;

  Window win = window_nodes(lr.response.h20, opts_);
  std::vector<std::vector<cplx>> diffs;
  for (int level = 0; level < std::max(2, opts_.levels); ++level) {
    double t = t_base / (1 << level);
    lr.t_steps.push_back(t);
    MetricField sp = qf_ii0(dir, t, opts_, end);
    MetricField sm = qf_ii0(dir, -t, opts_, end);
    std::vector<cplx> dk(win.idx.size());
    for (std::size_t p = 0; p < win.idx.size(); ++p)
      dk[p] = (sp.h20.v[win.idx[p]] - sm.h20.v[win.idx[p]]) / (2 * t);
    diffs.push_back(std::move(dk));
  }

  std::size_t np = win.idx.size();
  const std::vector<cplx>& fine = diffs.back();
  const std::vector<cplx>& coarse = diffs[diffs.size() - 2];
  std::vector<cplx> extr(np);
  for (std::size_t p = 0; p < np; ++p) extr[p] = (4.0 * fine[p] - coarse[p]) / 3.0;

  double e2 = 0, r2 = 0, d2 = 0;
  for (std::size_t p = 0; p < np; ++p) {
    // h20 of the tensor Re(phi dz^2) is phi/2, matching the measured grid
    cplx exp_val = 0.5 * target.eval(lr.expected.h20.coord(win.ix[p], win.iy[p]));
    lr.response.h20.v[win.idx[p]] = extr[p];
    lr.expected.h20.v[win.idx[p]] = exp_val;
    e2 += std::norm(exp_val);
    r2 += std::norm(extr[p]);
    d2 += std::norm(extr[p] - exp_val);
  }
  lr.response_norm = std::sqrt(r2);
  lr.expected_norm = std::sqrt(e2);
  lr.rel_l2_error = lr.expected_norm > 0
                        ? std::sqrt(d2) / lr.expected_norm
                        : (lr.response_norm > 0 ? HUGE_VAL : 0.0);
  for (const auto& dk : diffs) {
    double s = 0;
    for (std::size_t p = 0; p < np; ++p) s += std::norm(dk[p] - extr[p]);
    lr.step_errors.push_back(std::sqrt(s));
  }
  lr.coeffs = project(lr.response, &lr.projection_residual);
  return lr;
}

double HessianLab::window_norm(const RationalDirection& d) const {
  ComplexGrid probe(opts_.grid_n, opts_.half_width, 0);
  Window win = window_nodes(probe, opts_);
  double s = 0;
  for (std::size_t p = 0; p < win.idx.size(); ++p)
    s += std::norm(d.eval(probe.coord(win.ix[p], win.iy[p])));
  return std::sqrt(s);
}

Eigen::VectorXd HessianLab::project(const MetricField& field, double* rel_residual) const {
  Window win = window_nodes(field.h20, opts_);
  std::size_t np = win.idx.size();
  int m = size();
  Eigen::MatrixXd a(2 * np, m);
  Eigen::VectorXd b(2 * np);
  for (std::size_t p = 0; p < np; ++p) {
    cplx z = field.h20.coord(win.ix[p], win.iy[p]);
    for (int j = 0; j < m; ++j) {
      // fit against the h20 component phi_j / 2, so the coefficients are in
      // the same tensor normalization as the field being projected
      cplx val = 0.5 * basis_[j].eval(z);
      a(2 * p, j) = val.real();
      a(2 * p + 1, j) = val.imag();
    }
    cplx fv = field.h20.v[win.idx[p]];
    b(2 * p) = fv.real();
    b(2 * p + 1) = fv.imag();
  }
  Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  if (rel_residual) {
    double bn = b.norm();
    *rel_residual = bn > 0 ? (a * c - b).norm() / bn : 0.0;
  }
  return c;
}

double HessianLab::vr_hessian_fd(const TangentPair& v, const TangentPair& w) const {
  LinearResponse rp = dii0_linear_response(w, End::plus_end);
  LinearResponse rm = dii0_linear_response(w, End::minus_end);
  return hessian_from_responses(v, rp, rm);
}

double HessianLab::hessian_from_responses(const TangentPair& v, const LinearResponse& plus_of_w,
                                          const LinearResponse& minus_of_w) const {
  if (v.plus_coeffs.size() != size() || v.minus_coeffs.size() != size())
    throw std::invalid_argument("hessian_from_responses: v carries no basis coefficients");
  double ip = v.plus_coeffs.dot(gram_ * plus_of_w.coeffs);
  double im = v.minus_coeffs.dot(gram_ * minus_of_w.coeffs);
  return -0.25 * (ip + im);
}

double vr_first_variation(const RQVector& v, const MetricField& ii0,
                          const QuadratureRule& rule) {
  double s = 0;
  for (const auto& node : rule.nodes) {
    if (!in_model_domain(ii0.model, node.z)) continue;
    double rho = hyperbolic_density(ii0.model, node.z);
    cplx b = ii0.h20.interp(node.z);
    s += node.w * 4 * std::real(v.phi(node.z) * std::conj(b)) / rho;
  }
  return -0.25 * s;
}

AcylindricalHessianResult acylindrical_hessian(const SkinningOperator& s,
                                               const Eigen::VectorXd& v) {
  if (v.size() != s.m.rows() || s.m.rows() != s.m.cols())
    throw std::invalid_argument("acylindrical_hessian: dimension mismatch");
  AcylindricalHessianResult r;
  r.value = v.dot(v - s.m * v) / 16.0;
  r.positive = r.value > 0;
  return r;
}

}  // namespace rvlab
