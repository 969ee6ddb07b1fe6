#pragma once

#include "funkvol/polytope.hpp"
#include "funkvol/quadrature.hpp"

namespace funkvol {

struct VolumeEstimate {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long long evaluations = 0;
  bool converged = true;
};

// log(pb/qb) with b the exit point of the ray from p through q.
double funk_distance(const Polytope& P, const Vec& p, const Vec& q);

// Forward metric ball B(x,R) = x + (1 - e^{-R})(P - x), rebuilt as a polytope.
Polytope funk_ball(const Polytope& P, const Vec& x, double R);

// Lebesgue volume of the polar dual of P at y (the Holmes-Thompson density).
double ht_density(const Polytope& P, const Vec& y);

// Holmes-Thompson volume of the metric ball B(x,R), by adaptive quadrature of
// the polar density over the shrunken flag simplices of the ball. tol is an
// absolute tolerance on the returned value.
VolumeEstimate ball_volume(const Polytope& P, const Vec& x, double R, double tol,
                           const QuadOptions& opt = {});

// Holmes-Thompson volume of K measured in the Funk geometry of L; requires K
// strictly inside L.
VolumeEstimate ht_volume_of_subset(const Polytope& L, const Polytope& K, double tol,
                                   const QuadOptions& opt = {});

struct GradientEstimate {
  Vec gradient;
  double abs_error_estimate = 0.0;
  long long evaluations = 0;
  bool converged = true;
};

// Exact gradient of x -> ball_volume(P, x, R). The ball is a translate of the
// fixed body (1-e^{-R})P by e^{-R} x, so the derivative is the outward flux
// of the polar density through the ball boundary, integrated facet by facet
// over the scaled flag simplices. rel_tol is relative to the total flux
// magnitude.
GradientEstimate ball_volume_gradient(const Polytope& P, const Vec& x, double R,
                                      double rel_tol = 1e-7, const QuadOptions& opt = {});

// ---- assembly layer shared with the Santalo minimizers ----

// Evaluates the polar density from the values of one affine form per proper
// face: sum over flags of det / prod of the n forms along the flag.
struct PolarDensity {
  int n = 0;
  int nf = 0;
  std::vector<double> det;                    // per flag
  std::vector<std::array<int, kMaxDim>> idx;  // per flag: form slots of f_0..f_{n-1}
  double inv_nfact = 1.0;
  double operator()(const double* t) const {
    double s = 0.0;
    for (size_t g = 0; g < det.size(); ++g) {
      const int* ix = idx[g].data();
      double prod = t[ix[0]];
      for (int i = 1; i < n; ++i) prod *= t[ix[i]];
      s += det[g] / prod;
    }
    return s * inv_nfact;
  }
};

struct BallAssembly {
  PolarDensity density;
  std::vector<FormSimplex> roots;  // one per flag of P, in fixed flag order
};

// Builds the quadrature problem for B(x,R). The form values at simplex
// vertices incident to a face are set to e^{-R} exactly (lattice incidence,
// not arithmetic), so the integrand stays accurate arbitrarily close to the
// boundary blow-up.
BallAssembly assemble_ball(const Polytope& P, const Vec& x, double R);

}  // namespace funkvol
