#include "rvlab/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace rvlab {

namespace {

long long pair_key(int a, int b, int n) {
  if (a > b) std::swap(a, b);
  return static_cast<long long>(a) * n + b;
}

// Kahan's stable Heron formula; requires a >= b >= c
double triangle_area(double a, double b, double c) {
  if (a < b) std::swap(a, b);
  if (b < c) std::swap(b, c);
  if (a < b) std::swap(a, b);
  double s = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
  if (s <= 0) return 0;
  return 0.25 * std::sqrt(s);
}

}  // namespace

DiscreteMetricSurface DiscreteMetricSurface::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mesh file: " + path);
  DiscreteMetricSurface m;
  int n_faces = -1, n_edges = -1;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "genus") {
      ls >> m.genus;
    } else if (tag == "vertices") {
      ls >> m.n_vertices;
    } else if (tag == "faces") {
      ls >> n_faces;
    } else if (tag == "edges") {
      ls >> n_edges;
    } else if (tag == "f") {
      std::array<int, 3> f{};
      ls >> f[0] >> f[1] >> f[2];
      if (!ls) throw std::runtime_error("malformed face line in " + path);
      m.faces.push_back(f);
    } else if (tag == "e") {
      int a, b;
      double len;
      ls >> a >> b >> len;
      if (!ls || len <= 0) throw std::runtime_error("malformed edge line in " + path);
      m.edges.push_back({a, b});
      m.ref_length.push_back(len);
    } else {
      throw std::runtime_error("unknown record '" + tag + "' in " + path);
    }
  }
  if (m.n_vertices <= 0 || m.faces.empty() || m.edges.empty())
    throw std::runtime_error("incomplete mesh file: " + path);
  if (n_faces >= 0 && n_faces != static_cast<int>(m.faces.size()))
    throw std::runtime_error("face count mismatch in " + path);
  if (n_edges >= 0 && n_edges != static_cast<int>(m.edges.size()))
    throw std::runtime_error("edge count mismatch in " + path);
  for (const auto& f : m.faces)
    for (int v : f)
      if (v < 0 || v >= m.n_vertices) throw std::runtime_error("face index out of range");
  for (const auto& e : m.edges)
    for (int v : e)
      if (v < 0 || v >= m.n_vertices) throw std::runtime_error("edge index out of range");
  m.phi.assign(m.n_vertices, 0.0);
  m.build_indices();
  return m;
}

void DiscreteMetricSurface::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write mesh file: " + path);
  out << "genus " << genus << "\n";
  out << "vertices " << n_vertices << "\n";
  out << "faces " << faces.size() << "\n";
  out << "edges " << edges.size() << "\n";
  for (const auto& f : faces) out << "f " << f[0] << " " << f[1] << " " << f[2] << "\n";
  char buf[64];
  for (std::size_t e = 0; e < edges.size(); ++e) {
    std::snprintf(buf, sizeof buf, "%.17g", length(static_cast<int>(e)));
    out << "e " << edges[e][0] << " " << edges[e][1] << " " << buf << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

int DiscreteMetricSurface::euler_characteristic() const {
  return n_vertices - static_cast<int>(edges.size()) + static_cast<int>(faces.size());
}

int DiscreteMetricSurface::edge_id(int a, int b) const {
  auto it = edge_lookup_.find(pair_key(a, b, n_vertices));
  return it == edge_lookup_.end() ? -1 : it->second;
}

double DiscreteMetricSurface::length(int e) const {
  return std::exp(phi[edges[e][0]] + phi[edges[e][1]]) * ref_length[e];
}

void DiscreteMetricSurface::build_indices() {
  edge_lookup_.clear();
  for (std::size_t e = 0; e < edges.size(); ++e)
    edge_lookup_[pair_key(edges[e][0], edges[e][1], n_vertices)] = static_cast<int>(e);
  face_edges.assign(faces.size(), {-1, -1, -1});
  for (std::size_t f = 0; f < faces.size(); ++f)
    for (int k = 0; k < 3; ++k) {
      int a = faces[f][(k + 1) % 3], b = faces[f][(k + 2) % 3];
      int e = edge_id(a, b);
      if (e < 0) throw std::runtime_error("face references a missing edge");
      face_edges[f][k] = e;
    }
}

MeshGeometry mesh_geometry(const DiscreteMetricSurface& m) {
  MeshGeometry g;
  g.defect.assign(m.n_vertices, 2 * std::numbers::pi);
  g.area.assign(m.n_vertices, 0.0);
  g.curvature.assign(m.n_vertices, 0.0);
  g.min_angle = std::numbers::pi;
  g.triangles_ok = true;

  for (std::size_t f = 0; f < m.faces.size(); ++f) {
    double l[3];
    for (int k = 0; k < 3; ++k) l[k] = m.length(m.face_edges[f][k]);
    if (l[0] >= l[1] + l[2] || l[1] >= l[2] + l[0] || l[2] >= l[0] + l[1]) {
      g.triangles_ok = false;
      continue;
    }
    double area = triangle_area(l[0], l[1], l[2]);
    for (int k = 0; k < 3; ++k) {
      double opp = l[k], b = l[(k + 1) % 3], c = l[(k + 2) % 3];
      double cosv = std::clamp((b * b + c * c - opp * opp) / (2 * b * c), -1.0, 1.0);
      double ang = std::acos(cosv);
      g.min_angle = std::min(g.min_angle, ang);
      int v = m.faces[f][k];
      g.defect[v] -= ang;
      g.area[v] += area / 3;
    }
    g.total_area += area;
  }
  for (int v = 0; v < m.n_vertices; ++v)
    g.curvature[v] = g.area[v] > 0 ? g.defect[v] / g.area[v] : 0.0;
  return g;
}

double gauss_bonnet_residual(const DiscreteMetricSurface& m) {
  MeshGeometry g = mesh_geometry(m);
  double s = 0;
  for (double d : g.defect) s += d;
  return s - 2 * std::numbers::pi * m.euler_characteristic();
}

}  // namespace rvlab
