#pragma once

#include <array>
#include <string>
#include <unordered_map>
#include <vector>

namespace rvlab {

// closed triangulated surface with a discrete conformal structure:
// the metric is edge lengths l_ab = exp(phi_a + phi_b) * ref_length_ab
struct DiscreteMetricSurface {
  int genus = 0;
  int n_vertices = 0;
  std::vector<std::array<int, 3>> faces;
  std::vector<std::array<int, 2>> edges;
  std::vector<double> ref_length;
  std::vector<double> phi;

  // per-face edge ids, entry k opposite corner k
  std::vector<std::array<int, 3>> face_edges;

  static DiscreteMetricSurface load(const std::string& path);
  void save(const std::string& path) const;  // writes effective lengths, phi folded in

  int euler_characteristic() const;
  int edge_id(int a, int b) const;  // -1 when absent
  double length(int e) const;

  void build_indices();  // fills face_edges and the endpoint lookup

 private:
  std::unordered_map<long long, int> edge_lookup_;
};

struct MeshGeometry {
  std::vector<double> defect;     // 2 pi minus the angle sum at each vertex
  std::vector<double> area;       // barycentric vertex areas
  std::vector<double> curvature;  // defect / area
  double total_area = 0;
  double min_angle = 0;
  bool triangles_ok = false;  // every triangle inequality holds strictly
};

MeshGeometry mesh_geometry(const DiscreteMetricSurface& m);

// sum of defects minus 2 pi chi (zero up to rounding on any closed mesh)
double gauss_bonnet_residual(const DiscreteMetricSurface& m);

}  // namespace rvlab
