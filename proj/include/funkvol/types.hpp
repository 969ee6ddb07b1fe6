#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>

namespace funkvol {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Everything downstream assumes desk-scale instances: ambient dimension at
// most 6 and at most 64 vertices, so faces fit in one 64-bit vertex mask.
inline constexpr int kMaxDim = 6;
inline constexpr int kMaxVertices = 64;

// Tolerance for face-lattice incidence decisions (relative to coordinate scale).
inline constexpr double kIncidenceEps = 1e-9;

using VertexMask = std::uint64_t;

inline int popcount(VertexMask m) { return __builtin_popcountll(m); }

inline double factorial(int n) {
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

// Volume of the n-dimensional Euclidean unit ball.
inline double unit_ball_volume(int n) {
  return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

}  // namespace funkvol
