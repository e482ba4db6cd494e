#include "rvlab/wvol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "rvlab/quadrature.hpp"

namespace rvlab {

double w_first_variation(const DiscreteMetricSurface& m, const std::vector<double>& u) {
  if (static_cast<int>(u.size()) != m.n_vertices)
    throw std::invalid_argument("w_first_variation: direction size mismatch");
  MeshGeometry g = mesh_geometry(m);
  double s = 0;
  for (int i = 0; i < m.n_vertices; ++i) s += g.defect[i] * u[i];
  return -0.25 * s;
}

double w_conformal_change(const DiscreteMetricSurface& m, const std::vector<double>& u,
                          int nodes) {
  if (static_cast<int>(u.size()) != m.n_vertices)
    throw std::invalid_argument("w_conformal_change: direction size mismatch");
  std::vector<double> gx, gw;
  gauss_legendre(nodes, gx, gw);
  DiscreteMetricSurface probe = m;
  double acc = 0;
  for (int k = 0; k < nodes; ++k) {
    double t = 0.5 * (gx[k] + 1.0);
    for (int i = 0; i < m.n_vertices; ++i) probe.phi[i] = m.phi[i] + t * u[i];
    acc += 0.5 * gw[k] * w_first_variation(probe, u);
  }
  return acc;
}

namespace {

double flow_rate(const MeshGeometry& g, int chi) {
  double k2 = 0;
  for (std::size_t i = 0; i < g.curvature.size(); ++i)
    k2 += g.curvature[i] * g.curvature[i] * g.area[i];
  double total = 2 * std::numbers::pi * chi;
  return 0.25 * (k2 - total * total / g.total_area);
}

double max_deviation(const MeshGeometry& g, double kbar) {
  double d = 0;
  for (double k : g.curvature) d = std::max(d, std::abs(k - kbar));
  return d;
}

FlowSample sample_state(const DiscreteMetricSurface& m, const MeshGeometry& g, int chi) {
  FlowSample s;
  s.rate = flow_rate(g, chi);
  s.max_dev = max_deviation(g, 2 * std::numbers::pi * chi / g.total_area);
  s.area = g.total_area;
  double defect_sum = 0;
  for (double d : g.defect) defect_sum += d;
  s.gauss_bonnet = defect_sum - 2 * std::numbers::pi * chi;
  s.min_angle = g.min_angle;
  return s;
}

}  // namespace

FlowResult ricci_flow(const DiscreteMetricSurface& m, const FlowOptions& opts) {
  FlowResult res;
  res.surface = m;
  const int chi = m.euler_characteristic();
  DiscreteMetricSurface& cur = res.surface;

  MeshGeometry g = mesh_geometry(cur);
  if (!g.triangles_ok) throw std::runtime_error("ricci_flow: degenerate input triangle");
  const double target_area = opts.target_area > 0 ? opts.target_area : g.total_area;

  FlowSample s0 = sample_state(cur, g, chi);
  res.trace.push_back(s0);

  double t = 0, w = 0, dt = opts.dt;
  std::vector<double> u(cur.n_vertices), step(cur.n_vertices);
  DiscreteMetricSurface trial = cur;

  for (int it = 1; it <= opts.max_steps && t < opts.t_end; ++it) {
    double kbar = 2 * std::numbers::pi * chi / g.total_area;
    double dev = max_deviation(g, kbar);
    if (dev < opts.curvature_tol) {
      res.converged = true;
      break;
    }
    for (int i = 0; i < cur.n_vertices; ++i) u[i] = -(g.curvature[i] - kbar);
    double rate = flow_rate(g, chi);

    bool accepted = false;
    int rejects = 0;
    while (!accepted) {
      for (int i = 0; i < cur.n_vertices; ++i) {
        step[i] = dt * u[i];
        trial.phi[i] = cur.phi[i] + step[i];
      }
      MeshGeometry gt = mesh_geometry(trial);
      if (gt.triangles_ok) {
        if (opts.project_area) {
          double c = 0.25 * std::log(target_area / gt.total_area);
          for (int i = 0; i < cur.n_vertices; ++i) {
            step[i] += c;
            trial.phi[i] += c;
          }
          gt = mesh_geometry(trial);
        }
        double dw = w_conformal_change(cur, step, opts.quad_nodes);
        if (dw >= -opts.w_slack) {
          accepted = true;
          cur.phi = trial.phi;
          g = gt;
          t += dt;
          w += dw;
          FlowSample s = sample_state(cur, g, chi);
          s.step = it;
          s.t = t;
          s.dt = dt;
          s.dw = dw;
          s.w = w;
          s.rate = rate;  // rate at the pre-step state, to compare with dw/dt
          s.max_dev = dev;
          res.trace.push_back(s);
          dt = std::min(dt * 1.2, opts.dt_max);
          break;
        }
      }
      dt /= 2;
      ++res.halvings;
      if (++rejects >= 10)
        throw std::runtime_error("ricci_flow: stiffness, step rejected 10 times in a row");
    }
  }
  return res;
}

NonuniquenessWitness nonuniqueness_witness(const DiscreteMetricSurface& m, double tol) {
  NonuniquenessWitness wit;
  MeshGeometry g = mesh_geometry(m);
  int lo = 0, hi = 0;
  for (int i = 1; i < m.n_vertices; ++i) {
    if (g.curvature[i] < g.curvature[lo]) lo = i;
    if (g.curvature[i] > g.curvature[hi]) hi = i;
  }
  if (g.curvature[hi] - g.curvature[lo] < tol) return wit;  // constant K: no witness

  wit.found = true;
  wit.u.assign(m.n_vertices, 0.0);
  // balance the bump pair so the area pairing vanishes exactly
  wit.u[lo] = 1.0 / g.area[lo];
  wit.u[hi] = -1.0 / g.area[hi];
  for (int i = 0; i < m.n_vertices; ++i) wit.area_pairing += wit.u[i] * g.area[i];
  wit.variation = w_first_variation(m, wit.u);
  return wit;
}

std::vector<double> admissible_perturbation(const DiscreteMetricSurface& m, double amplitude,
                                            std::uint64_t seed, int min_passes) {
  if (amplitude < 0) throw std::invalid_argument("admissible_perturbation: negative amplitude");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> phi(m.n_vertices);
  for (double& v : phi) v = unif(rng);
  if (amplitude == 0) return std::vector<double>(m.n_vertices, 0.0);

  std::vector<std::vector<int>> nbr(m.n_vertices);
  for (const auto& e : m.edges) {
    nbr[e[0]].push_back(e[1]);
    nbr[e[1]].push_back(e[0]);
  }

  DiscreteMetricSurface trial = m;
  std::vector<double> next(m.n_vertices);
  const int max_passes = 64;
  for (int pass = 1; pass <= max_passes; ++pass) {
    // Jacobi relaxation: half self, half neighbour mean
    for (int i = 0; i < m.n_vertices; ++i) {
      double acc = 0;
      for (int j : nbr[i]) acc += phi[j];
      next[i] = 0.5 * phi[i] + 0.5 * acc / static_cast<double>(nbr[i].size());
    }
    phi.swap(next);
    if (pass < min_passes) continue;

    double sup = 0;
    for (double v : phi) sup = std::max(sup, std::abs(v));
    if (sup == 0) continue;
    for (int i = 0; i < m.n_vertices; ++i)
      trial.phi[i] = m.phi[i] + phi[i] * (amplitude / sup);
    if (mesh_geometry(trial).triangles_ok) {
      std::vector<double> out(m.n_vertices);
      for (int i = 0; i < m.n_vertices; ++i) out[i] = phi[i] * (amplitude / sup);
      return out;
    }
  }
  throw std::runtime_error("admissible_perturbation: no valid metric after smoothing");
}

}  // namespace rvlab
