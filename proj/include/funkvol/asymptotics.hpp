#pragma once

#include <utility>
#include <vector>

#include "funkvol/funk.hpp"
#include "funkvol/polytope.hpp"

namespace funkvol {

// omega_n * volht(B(x,R)) = c0 R^n + c1 R^{n-1} + o(R^{n-1}).
struct AsymptoticCoeffs {
  double c0 = 0.0;
  double c1 = 0.0;
  std::vector<std::pair<int, double>> summands;  // (flag index, log term)
};

// |flags(P)| / (n!)^2.
double c0(const Polytope& P);

// c1 = n/(n!)^2 * sum over flags f of log(1 - <q((rf)_{n-1}), v(f_0)>), with
// rf the complete flip and q the dual vertex of the image facet. Requires the
// origin interior; throws DegeneratePairing if a log argument is <= 1e-12.
AsymptoticCoeffs c1_flip(const Polytope& P);

// Same coefficient from an arbitrary flag decomposition with p(P) = 0:
// 1/(n!(n-1)!) * sum over flags of sum_{i=0}^{n-1}
//   log(1 - <q((r_i f)_i), p(f_i)>) - log(1 - <q((r_i f)_i), p(f_{i+1})>).
double c1_decomposed(const Polytope& P, const FlagDecomposition& D);

// c1 of the expansion for balls centered at x: the flag sum of
// log(1 - <q_F / (1 - <q_F, x>), v(f_0) - x>), q_F = q((rf)_{n-1}), scaled by
// 1/(n!(n-1)!). Strictly convex and proper in x; +infinity on the boundary.
double c1_at_point(const Polytope& P, const Vec& x);

// Least-squares fit of omega_n * ball volume against (R^n, R^{n-1}, R^{n-2}).
struct CoeffFit {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::vector<double> scaled_volumes;  // omega_n * V per grid point
  std::vector<double> residuals;       // fit residual per grid point
  long long evaluations = 0;
  bool converged = true;
};

// R_grid must be strictly increasing with >= 3 points and max >= 15. Each
// volume is computed to a relative tolerance rel_tol (scaled by the predicted
// leading term c0 R^n).
CoeffFit fit_coeffs_numeric(const Polytope& P, const Vec& x, const std::vector<double>& R_grid,
                            double rel_tol = 1e-5, const QuadOptions& opt = {});

// For centrally symmetric P with exactly 2^n n! flags: true iff every flag
// pairs its base vertex with the flipped facet at inner product -1, i.e.
// <q((rf)_{n-1}), -v(f_0)> = 1. Throws NotCentrallySymmetric / WrongFlagCount.
bool flag_equality_check(const Polytope& P);

}  // namespace funkvol
