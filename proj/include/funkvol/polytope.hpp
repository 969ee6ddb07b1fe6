#pragma once

#include <array>
#include <vector>

#include "funkvol/types.hpp"

namespace funkvol {

// One supporting halfspace <normal, x> <= offset of the polytope. Normals are
// stored so that offset == 1 whenever the origin is interior.
struct Facet {
  Vec normal;
  double offset = 1.0;
};

struct Face {
  int dim = 0;               // -1 (empty face) .. n (the polytope itself)
  VertexMask vertices = 0;   // bitmask into Polytope::vertices()
  std::vector<int> up;       // ids of faces one dimension higher
  std::vector<int> down;     // ids of faces one dimension lower
  int facet_index = -1;      // for dim n-1 faces: index into facets()
};

// Maximal chain of faces, face id per dimension 0..n.
struct Flag {
  std::array<int, kMaxDim + 1> face{};
  int n = 0;
  int operator[](int d) const { return face[static_cast<size_t>(d)]; }
};

// Convex polytope with its full face lattice. Construct via build_polytope.
class Polytope {
 public:
  int dim() const { return n_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }

  // Face access. Ids are global and deterministic (sorted by dim, then mask).
  const Face& face(int id) const { return faces_[static_cast<size_t>(id)]; }
  const std::vector<int>& faces_of_dim(int d) const { return by_dim_[static_cast<size_t>(d + 1)]; }
  int face_count(int d) const { return static_cast<int>(faces_of_dim(d).size()); }
  int total_faces() const { return static_cast<int>(faces_.size()); }
  int empty_face_id() const { return faces_of_dim(-1)[0]; }
  int top_face_id() const { return faces_of_dim(n_)[0]; }

  bool origin_interior() const { return origin_interior_; }

  // Vertex of the polar dual matching facet i; requires the origin interior.
  Vec dual_vertex(int facet_index) const;

  // Coordinates of the (unique) vertex making up a dim-0 face.
  const Vec& vertex_of_face(int face_id) const;

  // Number of maximal chains in the closed interval [empty face, F].
  double flags_below(int face_id) const { return flags_below_[static_cast<size_t>(face_id)]; }

  bool contains(const Vec& x, double slack = 0.0) const;
  bool strictly_interior(const Vec& x) const;

  // Barycenter of a face's vertices.
  Vec face_barycenter(int face_id) const;

  double coordinate_scale() const { return scale_; }

 private:
  friend Polytope build_polytope(const std::vector<Vec>& points);

  int n_ = 0;
  std::vector<Vec> vertices_;
  std::vector<Facet> facets_;
  std::vector<Face> faces_;
  std::vector<std::vector<int>> by_dim_;  // index shifted by +1 (slot 0 = empty face)
  std::vector<double> flags_below_;
  bool origin_interior_ = false;
  double scale_ = 1.0;
};

// Builds the polytope (facets + face lattice) from a vertex cloud. Duplicate
// and non-extreme points are dropped. Throws EmptyInput / DegenerateInput /
// DimensionTooLarge / TooManyVertices.
Polytope build_polytope(const std::vector<Vec>& points);

// Polar dual of P seen from interior point x (vertices w/(1 - <w,x>) for w a
// vertex of the polar at the origin). Requires the origin interior to P.
Polytope polar_dual(const Polytope& P, const Vec& x);

// All maximal flags, ordered lexicographically by face id per dimension.
std::vector<Flag> enumerate_flags(const Polytope& P);

// Replaces f_i by the unique other face between f_{i-1} and f_{i+1}.
Flag flip(const Polytope& P, const Flag& f, int i);

// r_{n-1} o ... o r_1 o r_0 (r_0 applied first).
Flag complete_flip(const Polytope& P, const Flag& f);

// Projective map given by an invertible (n+1)x(n+1) matrix acting on
// homogeneous coordinates (x, 1); throws MapsThroughInfinity if the last
// homogeneous coordinate is not positive on every image vertex.
Polytope apply_collineation(const Polytope& P, const Mat& M);

// Interior reference points: primal_point[id] lies in the relative interior
// of the face, dual_point[id] in the relative interior of its dual face
// (expressed as a point of the polar). primal_point of the top face is the
// anchor (origin for default_decomposition).
struct FlagDecomposition {
  std::vector<Vec> primal_point;  // dims 0..n
  std::vector<Vec> dual_point;    // dims 0..n-1
};

// Barycentric decomposition: vertex barycenters on the primal side, barycenters
// of incident facet normals on the dual side. Requires the origin interior.
FlagDecomposition default_decomposition(const Polytope& P);

// As above but with the top-face anchor placed at a given interior point.
FlagDecomposition anchored_decomposition(const Polytope& P, const Vec& anchor);

// Seeded random interior points: positive convex mixes of the face vertices
// and of the incident facet duals, anchor kept at the origin.
FlagDecomposition random_decomposition(const Polytope& P, unsigned long long seed);

// Volume of the simplex conv{p(f_0), ..., p(f_n)} for one flag.
double flag_simplex_volume(const Polytope& P, const FlagDecomposition& D, const Flag& f);

}  // namespace funkvol
