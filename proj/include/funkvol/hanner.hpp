#pragma once

#include <string>
#include <vector>

#include "funkvol/polytope.hpp"

namespace funkvol {

// Expression tree for bodies generated from segments by cartesian products
// and polar duality.  Every node describes a centrally symmetric polytope
// with the origin interior.
struct HannerSpec {
  enum class Kind { segment, product, polar };

  Kind kind = Kind::segment;
  std::vector<HannerSpec> children;  // product: >= 2 children, polar: exactly 1

  int dimension() const;
};

// Grammar: spec := "segment" | "product" "(" spec ("," spec)+ ")"
//                | "polar" "(" spec ")".  Whitespace is ignored.
HannerSpec parse_hanner_spec(const std::string& text);

// Realizes the spec as a vertex-described polytope.  Segments become
// [-1, 1], products concatenate coordinates, polar takes the dual at the
// origin.  Total dimension above 5 is rejected.
Polytope hanner_build(const HannerSpec& spec);

// Holmes-Thompson volume of the radius-R ball about the center, which is the
// same for every Hanner polytope of dimension n:
// 2^n / (n! omega_n) * (R + log(2 - e^-R))^n.
double hanner_ball_volume(int n, double R);

}  // namespace funkvol
