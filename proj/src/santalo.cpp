#include "funkvol/santalo.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "funkvol/asymptotics.hpp"
#include "funkvol/errors.hpp"

namespace funkvol {

namespace {

struct FacetSystem {
  std::vector<Vec> q;       // dual vertex per facet
  std::vector<double> w;    // flags through the facet
  double wsum = 0.0;
};

FacetSystem facet_system(const Polytope& P) {
  if (!P.origin_interior()) fail(Errc::OriginNotInterior, "dual vertices need the origin interior");
  FacetSystem fs;
  const int n = P.dim();
  for (int id : P.faces_of_dim(n - 1)) {
    fs.q.push_back(P.dual_vertex(P.face(id).facet_index));
    fs.w.push_back(P.flags_below(id));
    fs.wsum += fs.w.back();
  }
  return fs;
}

// Largest step fraction keeping every 1 - <q,z> at least 10% of its value.
double feasible_step(const FacetSystem& fs, const Vec& z, const Vec& d) {
  double alpha = 1.0;
  for (size_t i = 0; i < fs.q.size(); ++i) {
    const double qd = fs.q[i].dot(d);
    if (qd > 0.0) alpha = std::min(alpha, 0.9 * (1.0 - fs.q[i].dot(z)) / qd);
  }
  return alpha;
}

}  // namespace

SantaloResult santalo_infinity(const Polytope& P, double tol) {
  if (tol <= 0.0) fail(Errc::DegenerateInput, "tolerance must be positive");
  const int n = P.dim();
  const FacetSystem fs = facet_system(P);
  const size_t m = fs.q.size();

  auto phi = [&](const Vec& z) {
    double s = 0.0;
    for (size_t i = 0; i < m; ++i) {
      const double t = 1.0 - fs.q[i].dot(z);
      if (t <= 0.0) return std::numeric_limits<double>::infinity();
      s -= fs.w[i] * std::log(t);
    }
    return s;
  };

  SantaloResult out;
  out.min_hessian_eig = std::numeric_limits<double>::infinity();
  Vec z = Vec::Zero(n);
  double fz = phi(z);
  for (int iter = 0; iter < 200; ++iter) {
    Vec g = Vec::Zero(n);
    Mat H = Mat::Zero(n, n);
    for (size_t i = 0; i < m; ++i) {
      const double t = 1.0 - fs.q[i].dot(z);
      g += fs.w[i] / t * fs.q[i];
      H += fs.w[i] / (t * t) * fs.q[i] * fs.q[i].transpose();
    }
    out.min_hessian_eig =
        std::min(out.min_hessian_eig, Eigen::SelfAdjointEigenSolver<Mat>(H).eigenvalues().minCoeff());
    out.residual = g.norm();
    out.iterations = iter;
    if (out.residual <= tol) {
      out.point = z;
      out.objective = c1_at_point(P, z);
      return out;
    }

    const Vec d = H.ldlt().solve(-g);
    double alpha = feasible_step(fs, z, d);
    const double slope = g.dot(d);
    while (alpha > 1e-18 && phi(z + alpha * d) > fz + 1e-4 * alpha * slope) alpha *= 0.5;
    if (alpha <= 1e-18) break;
    z += alpha * d;
    fz = phi(z);
  }
  fail(Errc::MaxIterations, "Newton budget exhausted before the stationarity tolerance");
}

Vec weighted_dual_centroid(const Polytope& P, const Vec& x) {
  if (!P.strictly_interior(x)) fail(Errc::PointNotInterior, "centroid base point not interior");
  const FacetSystem fs = facet_system(P);
  Vec acc = Vec::Zero(P.dim());
  for (size_t i = 0; i < fs.q.size(); ++i) acc += fs.w[i] / (1.0 - fs.q[i].dot(x)) * fs.q[i];
  return acc / fs.wsum;
}

SantaloResult santalo_at_radius(const Polytope& P, double R, double tol, const QuadOptions& opt) {
  if (R <= 0.0) fail(Errc::NonpositiveRadius, "ball radius must be positive");
  if (tol <= 0.0) fail(Errc::DegenerateInput, "tolerance must be positive");
  const int n = P.dim();
  const FacetSystem fs = facet_system(P);

  // The flux gradient is cheap (one dimension down), so Newton runs on exact
  // gradients with a finite-difference Hessian.
  const double grad_rel = 1e-7;
  bool quad_ok = true;
  auto grad = [&](const Vec& z) {
    GradientEstimate ge = ball_volume_gradient(P, z, R, grad_rel, opt);
    quad_ok = quad_ok && ge.converged;
    return ge;
  };

  SantaloResult out;
  out.min_hessian_eig = std::numeric_limits<double>::infinity();
  Vec z = santalo_infinity(P, 1e-10).point;

  double inr = std::numeric_limits<double>::infinity();
  for (const Facet& f : P.facets())
    inr = std::min(inr, (f.offset - f.normal.dot(z)) / f.normal.norm());
  const double h = 1e-3 * inr;

  bool done = false;
  for (int iter = 0; iter < 100 && !done; ++iter) {
    const GradientEstimate ge = grad(z);
    Mat H(n, n);
    for (int i = 0; i < n; ++i) {
      Vec e = Vec::Zero(n);
      e[i] = h;
      H.col(i) = (grad(z + e).gradient - grad(z - e).gradient) / (2.0 * h);
    }
    H = ((H + H.transpose()) / 2.0).eval();
    const double lmin = Eigen::SelfAdjointEigenSolver<Mat>(H).eigenvalues().minCoeff();
    out.min_hessian_eig = std::min(out.min_hessian_eig, lmin);
    if (lmin <= 0.0) H += (1e-12 - lmin) * Mat::Identity(n, n);

    Vec d = H.ldlt().solve(-ge.gradient);
    double alpha = feasible_step(fs, z, d);
    out.iterations = iter + 1;
    if (alpha * d.norm() <= 0.5 * tol) {
      z += alpha * d;
      done = true;
      break;
    }
    // Divergence safeguard only: near the minimum the gradient norm sits at
    // the quadrature noise floor, so strict decrease must not be required.
    const double gn = ge.gradient.norm();
    const double allow = std::max(2.0 * gn, gn + 10.0 * ge.abs_error_estimate);
    for (int k = 0; k < 12 && grad(z + alpha * d).gradient.norm() > allow; ++k) alpha *= 0.5;
    z += alpha * d;
  }
  if (!done) fail(Errc::MaxIterations, "Newton budget exhausted before the point tolerance");
  if (!quad_ok) fail(Errc::ToleranceNotReached, "boundary flux quadrature did not converge");

  out.point = z;
  out.residual = grad(z).gradient.norm();

  VolumeEstimate coarse = ball_volume(P, z, R, std::numeric_limits<double>::max(), opt);
  VolumeEstimate fine = ball_volume(P, z, R, 1e-5 * std::abs(coarse.value), opt);
  if (!fine.converged) fail(Errc::ToleranceNotReached, "objective quadrature did not converge");
  out.objective = fine.value;
  return out;
}

}  // namespace funkvol
