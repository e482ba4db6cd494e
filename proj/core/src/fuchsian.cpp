#include "rvlab/fuchsian.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace rvlab {

double OctagonDomain::r_max(double phi) const {
  // fold into the symmetry sector [-pi/8, pi/8] around the nearest side axis
  constexpr double sector = std::numbers::pi / 4;
  double t = std::remainder(phi, sector);
  double cs = std::cos(t);
  double disc = arc_center * arc_center * cs * cs - 1.0;
  // side arcs are orthogonal to the unit circle: d_c^2 - r_arc^2 = 1
  return arc_center * cs - std::sqrt(disc);
}

bool OctagonDomain::contains(cplx w) const {
  double r = std::abs(w);
  if (r >= vertex_radius) return false;
  return r < r_max(std::arg(w));
}

std::vector<MoebiusMap> FuchsianGroup::enumerate(int cutoff) const {
  std::vector<MoebiusMap> gens_inv;
  for (const auto& g : generators) {
    gens_inv.push_back(g);
    gens_inv.push_back(g.inverse());
  }
  std::vector<MoebiusMap> ball{MoebiusMap::identity()};
  std::set<std::array<std::int64_t, 4>> seen{MoebiusMap::identity().key()};
  std::size_t sphere_begin = 0;
  for (int len = 1; len <= cutoff; ++len) {
    std::size_t sphere_end = ball.size();
    for (std::size_t i = sphere_begin; i < sphere_end; ++i) {
      for (const auto& g : gens_inv) {
        MoebiusMap m = ball[i].compose(g).normalized();
        if (seen.insert(m.key()).second) ball.push_back(m);
      }
    }
    sphere_begin = sphere_end;
  }
  return ball;
}

std::vector<MoebiusC> FuchsianGroup::enumerate_disk(int cutoff) const {
  auto ball = enumerate(cutoff);
  std::vector<MoebiusC> out;
  out.reserve(ball.size());
  for (const auto& m : ball) out.push_back(MoebiusC::to_disk(m));
  return out;
}

FuchsianGroup FuchsianGroup::trivial() { return {}; }

FuchsianGroup FuchsianGroup::cyclic(double lambda2) {
  if (!(lambda2 > 1)) throw std::invalid_argument("cyclic group needs lambda2 > 1");
  FuchsianGroup g;
  g.kind = Kind::cyclic;
  double s = std::sqrt(lambda2);
  g.generators = {MoebiusMap{s, 0, 0, 1 / s}};
  g.cyclic_lambda2 = lambda2;
  return g;
}

FuchsianGroup FuchsianGroup::genus2_octagon() {
  FuchsianGroup g;
  g.kind = Kind::octagon;
  // side-pairing translations: A_k = R(k pi/4) T R(k pi/4)^{-1},
  // cosh(ell/2) = 1 + sqrt(2)
  double ch = 1.0 + std::sqrt(2.0);
  double sh = std::sqrt(ch * ch - 1.0);
  MoebiusMap T{ch + sh, 0, 0, 1 / (ch + sh)};
  for (int k = 0; k < 4; ++k) {
    MoebiusMap R = MoebiusMap::rotation(k * std::numbers::pi / 4);
    g.generators.push_back(R.compose(T).compose(R.inverse()).normalized());
  }
  OctagonDomain dom;
  // circumradius: cosh r_v = 3 + 2 sqrt(2); inradius: cosh r_i = 1 + sqrt(2)
  double cv = 3.0 + 2.0 * std::sqrt(2.0);
  dom.vertex_radius = std::sqrt(cv * cv - 1.0) / (cv + 1.0);  // tanh(r_v/2)
  double ci = 1.0 + std::sqrt(2.0);
  dom.side_foot = std::sqrt(ci * ci - 1.0) / (ci + 1.0);
  dom.arc_center = 0.5 * (dom.side_foot + 1.0 / dom.side_foot);
  g.octagon = dom;
  return g;
}

}  // namespace rvlab
