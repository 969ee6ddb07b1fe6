#pragma once

#include <string>

#include "funkvol/polytope.hpp"

namespace funkvol {

// Builds a polytope from {"vertices": [[...], ...], "center"?: [...]}.
// Vertices are translated so the optional center lands at the origin.
Polytope parse_polytope_json(const std::string& text);

Polytope load_polytope(const std::string& path);

}  // namespace funkvol
