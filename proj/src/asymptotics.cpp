#include "funkvol/asymptotics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>

#include "funkvol/errors.hpp"

namespace funkvol {

namespace {

constexpr double kPairingTol = 1e-12;

double log_pairing(double a, const char* what) {
  if (a <= kPairingTol) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s: 1 - <q,p> = %.3e is not strictly positive", what, a);
    fail(Errc::DegeneratePairing, buf);
  }
  return std::log(a);
}

}  // namespace

double c0(const Polytope& P) {
  const int n = P.dim();
  return P.flags_below(P.top_face_id()) / (factorial(n) * factorial(n));
}

AsymptoticCoeffs c1_flip(const Polytope& P) {
  if (!P.origin_interior()) fail(Errc::OriginNotInterior, "c1_flip needs the origin interior");
  const int n = P.dim();
  const auto flags = enumerate_flags(P);

  AsymptoticCoeffs out;
  out.c0 = static_cast<double>(flags.size()) / (factorial(n) * factorial(n));
  out.summands.reserve(flags.size());
  double sum = 0.0;
  for (size_t k = 0; k < flags.size(); ++k) {
    const Flag rf = complete_flip(P, flags[k]);
    const Vec q = P.dual_vertex(P.face(rf[n - 1]).facet_index);
    const Vec& v = P.vertex_of_face(flags[k][0]);
    const double term = log_pairing(1.0 - q.dot(v), "c1_flip");
    out.summands.emplace_back(static_cast<int>(k), term);
    sum += term;
  }
  out.c1 = static_cast<double>(n) / (factorial(n) * factorial(n)) * sum;
  return out;
}

double c1_decomposed(const Polytope& P, const FlagDecomposition& D) {
  const int n = P.dim();
  const Vec& anchor = D.primal_point[static_cast<size_t>(P.top_face_id())];
  if (anchor.norm() > 1e-12 * P.coordinate_scale())
    fail(Errc::DegenerateInput, "c1_decomposed needs a decomposition anchored at the origin");

  double sum = 0.0;
  for (const Flag& f : enumerate_flags(P)) {
    for (int i = 0; i < n; ++i) {
      const Flag g = flip(P, f, i);
      const Vec& q = D.dual_point[static_cast<size_t>(g[i])];
      const Vec& pi = D.primal_point[static_cast<size_t>(f[i])];
      const Vec& pj = D.primal_point[static_cast<size_t>(f.face[static_cast<size_t>(i + 1)])];
      sum += log_pairing(1.0 - q.dot(pi), "c1_decomposed");
      sum -= log_pairing(1.0 - q.dot(pj), "c1_decomposed");
    }
  }
  return sum / (factorial(n) * factorial(n - 1));
}

double c1_at_point(const Polytope& P, const Vec& x) {
  if (!P.strictly_interior(x)) fail(Errc::PointNotInterior, "c1 expansion center not interior");
  const int n = P.dim();

  double sum = 0.0;
  for (const Flag& f : enumerate_flags(P)) {
    const Flag rf = complete_flip(P, f);
    const Vec q = P.dual_vertex(P.face(rf[n - 1]).facet_index);
    const Vec& v = P.vertex_of_face(f[0]);
    const double qx = 1.0 - q.dot(x);
    sum += log_pairing(1.0 - q.dot(Vec(v - x)) / qx, "c1_at_point");
  }
  return sum / (factorial(n) * factorial(n - 1));
}

CoeffFit fit_coeffs_numeric(const Polytope& P, const Vec& x, const std::vector<double>& R_grid,
                            double rel_tol, const QuadOptions& opt) {
  const int m = static_cast<int>(R_grid.size());
  if (m < 3) fail(Errc::DegenerateInput, "fit needs at least 3 grid points");
  for (int i = 0; i < m; ++i) {
    if (R_grid[static_cast<size_t>(i)] <= 0.0) fail(Errc::NonpositiveRadius, "fit grid radius");
    if (i > 0 && R_grid[static_cast<size_t>(i)] <= R_grid[static_cast<size_t>(i - 1)])
      fail(Errc::DegenerateInput, "fit grid must be strictly increasing");
  }
  if (R_grid.back() < 15.0) fail(Errc::DegenerateInput, "fit grid must reach R >= 15");

  const int n = P.dim();
  const double wn = unit_ball_volume(n);
  const double lead = c0(P);

  CoeffFit out;
  out.scaled_volumes.resize(static_cast<size_t>(m));
  Eigen::MatrixXd X(m, 3);
  Eigen::VectorXd y(m);
  for (int i = 0; i < m; ++i) {
    const double R = R_grid[static_cast<size_t>(i)];
    const double tol = rel_tol * lead * std::pow(R, n) / wn;
    const VolumeEstimate est = ball_volume(P, x, R, tol, opt);
    out.evaluations += est.evaluations;
    out.converged = out.converged && est.converged;
    const double v = wn * est.value;
    out.scaled_volumes[static_cast<size_t>(i)] = v;
    y(i) = v;
    X(i, 0) = std::pow(R, n);
    X(i, 1) = std::pow(R, n - 1);
    X(i, 2) = std::pow(R, n - 2);
  }
  const Eigen::Vector3d b = X.colPivHouseholderQr().solve(y);
  out.c0 = b(0);
  out.c1 = b(1);
  out.c2 = b(2);
  const Eigen::VectorXd r = y - X * b;
  out.residuals.assign(r.data(), r.data() + m);
  return out;
}

bool flag_equality_check(const Polytope& P) {
  const int n = P.dim();
  const double tol = 1e-9 * P.coordinate_scale();
  for (const Vec& v : P.vertices()) {
    bool matched = false;
    for (const Vec& w : P.vertices())
      if ((v + w).norm() <= tol) {
        matched = true;
        break;
      }
    if (!matched) fail(Errc::NotCentrallySymmetric, "vertex set is not symmetric about 0");
  }

  const auto flags = enumerate_flags(P);
  const double expected = std::pow(2.0, n) * factorial(n);
  if (static_cast<double>(flags.size()) != expected)
    fail(Errc::WrongFlagCount, "flag count differs from 2^n n!");

  for (const Flag& f : flags) {
    const Flag rf = complete_flip(P, f);
    const Vec q = P.dual_vertex(P.face(rf[n - 1]).facet_index);
    const Vec& v = P.vertex_of_face(f[0]);
    if (std::abs(1.0 + q.dot(v)) > 1e-9) return false;
  }
  return true;
}

}  // namespace funkvol
