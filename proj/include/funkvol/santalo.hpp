#pragma once

#include "funkvol/funk.hpp"
#include "funkvol/polytope.hpp"

namespace funkvol {

struct SantaloResult {
  Vec point;
  double objective = 0.0;
  double residual = 0.0;  // stationarity norm at the returned point
  int iterations = 0;
  double min_hessian_eig = 0.0;  // smallest Hessian eigenvalue seen along the iterates
};

// Minimizer s_inf of the second ball-volume coefficient x -> c1_at_point(P,x)
// by damped Newton from the origin. On success the residual
// ||sum_F |flags(F)| q(F) / (1 - <q(F),z>)|| over facets F is <= tol;
// objective is c1_at_point at the solution. Requires the origin interior.
SantaloResult santalo_infinity(const Polytope& P, double tol = 1e-8);

// Minimizer s_R of x -> ball_volume(P, x, R), found by Newton on the exact
// flux gradient with finite-difference Hessians. tol is the point accuracy;
// objective is the minimal Holmes-Thompson volume.
SantaloResult santalo_at_radius(const Polytope& P, double R, double tol = 1e-4,
                                const QuadOptions& opt = {});

// Flag-count weighted average of the vertices of the polar dual at x:
// sum_F |flags(F)| q_x(F) / sum_F |flags(F)|. Vanishes exactly at s_inf.
Vec weighted_dual_centroid(const Polytope& P, const Vec& x);

}  // namespace funkvol
