#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rvlab/moebius.hpp"

namespace rvlab {

// Geodesic-octagon fundamental domain of the genus-2 surface group,
// described in the disk model. Regular octagon centered at 0 with
// vertex angles (2k+1)pi/8; sides are circular arcs orthogonal to the
// unit circle.
struct OctagonDomain {
  double vertex_radius;   // euclidean radius of the 8 vertices
  double side_foot;       // euclidean radius of a side's closest point (t0)
  double arc_center;      // distance of a side-arc center from 0 (d_c)

  // largest radius inside the octagon in direction phi (disk model)
  double r_max(double phi) const;
  bool contains(cplx w) const;
};

// Finitely generated discrete subgroup of PSL(2,R) acting on the
// half-plane, with a distinguished fundamental domain where one is known.
struct FuchsianGroup {
  enum class Kind { trivial, cyclic, octagon };

  Kind kind = Kind::trivial;
  std::vector<MoebiusMap> generators;
  int word_length_cutoff = 4;
  // cyclic: z -> lambda^2 z, fundamental annulus 1 <= |z| < lambda^2
  double cyclic_lambda2 = 0;
  std::optional<OctagonDomain> octagon;

  // all distinct elements of word length <= cutoff (identity included);
  // throws if duplicates-up-to-sign are produced by unequal reduced words
  // shorter than the relator length would allow
  std::vector<MoebiusMap> enumerate(int cutoff) const;
  std::vector<MoebiusC> enumerate_disk(int cutoff) const;

  static FuchsianGroup trivial();
  // infinite cyclic group generated by z -> lambda2 * z  (lambda2 = e^{ell})
  static FuchsianGroup cyclic(double lambda2);
  // genus-2 regular-octagon side-pairing group (Bolza surface)
  static FuchsianGroup genus2_octagon();
};

}  // namespace rvlab
