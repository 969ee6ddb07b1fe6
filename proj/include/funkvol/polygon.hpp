#pragma once

#include <vector>

#include "funkvol/types.hpp"

namespace funkvol {

// Convex polygon with the origin strictly interior, together with the dual
// vertices paired so that <e[i], v[i-1]> = <e[i], v[i]> = 1.  Construct via
// make_polygon; the 2-D formulas below index into both lists cyclically.
struct Polygon {
  std::vector<Vec> v;  // counterclockwise
  std::vector<Vec> e;  // e[i] is dual to the edge from v[i-1] to v[i]

  int size() const { return static_cast<int>(v.size()); }
};

// Validates convex position in the given cyclic order (either orientation
// accepted, stored counterclockwise), origin interior, and no two consecutive
// edges within angle 1e-8 of parallel.
Polygon make_polygon(std::vector<Vec> vertices);

// Second volume-growth coefficient: half-sum of log(1 - <e_i, v_j>) over
// pairs where v_j is adjacent to an endpoint of edge i but not on it.
double polygon_c1(const Polygon& Q);

// d/dlambda of omega_2 * volht(B(0, R)) at lambda = 1 - e^-R, in closed form.
double polygon_dV_dlambda(const Polygon& Q, double lambda);

// Gradient of polygon_c1 with respect to each vertex, by central differences
// that rebuild the dual pairing at every evaluation.
std::vector<Vec> polygon_c1_gradient(const Polygon& Q);

}  // namespace funkvol
