#include "funkvol/funk.hpp"

#include <cmath>
#include <limits>

#include "funkvol/errors.hpp"

namespace funkvol {

namespace {

// Dual-side data of P as seen from an interior base point x: one polar point
// per proper face (barycenter of the incident polar-at-x facet vertices),
// plus the pairings against the shifted primal face barycenters.
struct DualData {
  int n = 0;
  int nf = 0;
  std::vector<int> slot_of_face;  // face id -> slot, -1 for empty/top face
  std::vector<Vec> q;             // per slot
  std::vector<Vec> p_shift;       // per slot: face barycenter - x
  std::vector<VertexMask> mask;   // per slot
  PolarDensity density;
};

DualData build_dual_data(const Polytope& P, const Vec& x, const std::vector<Flag>& flags) {
  const int n = P.dim();
  DualData dd;
  dd.n = n;
  dd.slot_of_face.assign(static_cast<size_t>(P.total_faces()), -1);
  for (int d = 0; d < n; ++d) {
    for (int id : P.faces_of_dim(d)) {
      dd.slot_of_face[static_cast<size_t>(id)] = dd.nf++;
      dd.p_shift.push_back(P.face_barycenter(id) - x);
      dd.mask.push_back(P.face(id).vertices);
      dd.q.emplace_back();
    }
  }

  std::vector<Vec> qfacet(P.facets().size());
  for (size_t j = 0; j < P.facets().size(); ++j) {
    const Facet& f = P.facets()[j];
    const double denom = f.offset - f.normal.dot(x);
    if (denom <= kIncidenceEps * (1.0 + f.normal.norm() * x.norm()))
      fail(Errc::PointNotInterior, "base point not interior to the polytope");
    qfacet[j] = f.normal / denom;
  }
  for (int d = 0; d < n; ++d) {
    for (int id : P.faces_of_dim(d)) {
      const int slot = dd.slot_of_face[static_cast<size_t>(id)];
      const VertexMask m = P.face(id).vertices;
      Vec acc = Vec::Zero(n);
      int cnt = 0;
      for (int fid : P.faces_of_dim(n - 1)) {
        const Face& F = P.face(fid);
        if ((m & F.vertices) == m) {
          acc += qfacet[static_cast<size_t>(F.facet_index)];
          ++cnt;
        }
      }
      dd.q[static_cast<size_t>(slot)] = acc / static_cast<double>(cnt);
    }
  }

  dd.density.n = n;
  dd.density.nf = dd.nf;
  dd.density.inv_nfact = 1.0 / factorial(n);
  Mat Q(n, n);
  for (const Flag& f : flags) {
    std::array<int, kMaxDim> ix{};
    for (int i = 0; i < n; ++i) {
      const int slot = dd.slot_of_face[static_cast<size_t>(f[i])];
      ix[static_cast<size_t>(i)] = slot;
      Q.col(i) = dd.q[static_cast<size_t>(slot)];
    }
    dd.density.idx.push_back(ix);
    dd.density.det.push_back(std::abs(Q.determinant()));
  }
  return dd;
}

}  // namespace

double funk_distance(const Polytope& P, const Vec& p, const Vec& q) {
  if (!P.strictly_interior(p)) fail(Errc::PointNotInterior, "first point not interior");
  if (!P.strictly_interior(q)) fail(Errc::PointNotInterior, "second point not interior");
  const Vec dir = q - p;
  if (dir.norm() <= kIncidenceEps * (p.norm() + q.norm() + 1.0)) return 0.0;
  double t_exit = std::numeric_limits<double>::infinity();
  for (const auto& f : P.facets()) {
    const double den = f.normal.dot(dir);
    if (den <= 0.0) continue;
    t_exit = std::min(t_exit, (f.offset - f.normal.dot(p)) / den);
  }
  if (!std::isfinite(t_exit)) fail(Errc::DegenerateInput, "ray does not exit the polytope");
  return std::log(t_exit / (t_exit - 1.0));
}

Polytope funk_ball(const Polytope& P, const Vec& x, double R) {
  if (R <= 0.0) fail(Errc::NonpositiveRadius, "ball radius must be positive");
  if (!P.strictly_interior(x)) fail(Errc::PointNotInterior, "ball center not interior");
  const double lambda = -std::expm1(-R);
  std::vector<Vec> verts;
  verts.reserve(P.vertices().size());
  for (const auto& v : P.vertices()) verts.push_back(x + lambda * (v - x));
  return build_polytope(verts);
}

double ht_density(const Polytope& P, const Vec& y) {
  if (!P.strictly_interior(y)) fail(Errc::PointNotInterior, "density point not interior");
  const int n = P.dim();
  Vec a = Vec::Zero(n);
  if (!P.origin_interior()) {
    for (const auto& v : P.vertices()) a += v;
    a /= static_cast<double>(P.vertices().size());
  }
  const auto flags = enumerate_flags(P);
  DualData dd = build_dual_data(P, a, flags);
  std::vector<double> t(static_cast<size_t>(dd.nf));
  for (int s = 0; s < dd.nf; ++s) t[static_cast<size_t>(s)] = 1.0 - dd.q[static_cast<size_t>(s)].dot(y - a);
  for (double v : t)
    if (v <= 0.0) fail(Errc::PointNotInterior, "density point too close to the boundary");
  return dd.density(t.data());
}

BallAssembly assemble_ball(const Polytope& P, const Vec& x, double R) {
  if (R <= 0.0) fail(Errc::NonpositiveRadius, "ball radius must be positive");
  const int n = P.dim();
  const double lambda = -std::expm1(-R);
  const double tau = std::exp(-R);

  const auto flags = enumerate_flags(P);
  DualData dd = build_dual_data(P, x, flags);

  // Pairings <q_F, p_G - x>; incidence G <= F makes the ball-vertex form value
  // exactly tau.
  Mat a(dd.nf, dd.nf);
  for (int F = 0; F < dd.nf; ++F)
    for (int G = 0; G < dd.nf; ++G)
      a(F, G) = dd.q[static_cast<size_t>(F)].dot(dd.p_shift[static_cast<size_t>(G)]);

  BallAssembly out;
  out.density = dd.density;
  out.roots.reserve(flags.size());
  const int cols = n + 1;
  Mat E(n, n);
  for (const Flag& f : flags) {
    FormSimplex rs;
    rs.vals.assign(static_cast<size_t>(dd.nf) * static_cast<size_t>(cols), 1.0);
    for (int j = 0; j < n; ++j) {
      const int Gslot = dd.slot_of_face[static_cast<size_t>(f[j])];
      const VertexMask gm = dd.mask[static_cast<size_t>(Gslot)];
      E.col(j) = dd.p_shift[static_cast<size_t>(Gslot)];
      for (int F = 0; F < dd.nf; ++F) {
        const bool incident = (gm & dd.mask[static_cast<size_t>(F)]) == gm;
        rs.vals[static_cast<size_t>(F) * static_cast<size_t>(cols) + static_cast<size_t>(j)] =
            incident ? tau : tau + lambda * (1.0 - a(F, Gslot));
      }
    }
    // apex column (center of the ball) keeps form value 1
    rs.volume = std::pow(lambda, n) * std::abs(E.determinant()) / factorial(n);
    out.roots.push_back(std::move(rs));
  }
  return out;
}

VolumeEstimate ball_volume(const Polytope& P, const Vec& x, double R, double tol,
                           const QuadOptions& opt) {
  if (!P.strictly_interior(x)) fail(Errc::PointNotInterior, "ball center not interior");
  BallAssembly ba = assemble_ball(P, x, R);
  const double wn = unit_ball_volume(P.dim());
  QuadResult qr = integrate_form_simplices(P.dim(), ba.density.nf, ba.roots, ba.density, tol * wn, opt);
  VolumeEstimate est;
  est.value = qr.value / wn;
  est.abs_error_estimate = qr.error / wn;
  est.evaluations = qr.evaluations;
  est.converged = qr.converged && est.abs_error_estimate <= tol;
  return est;
}

VolumeEstimate ht_volume_of_subset(const Polytope& L, const Polytope& K, double tol,
                                   const QuadOptions& opt) {
  const int n = L.dim();
  if (K.dim() != n) fail(Errc::DegenerateInput, "ambient and subset dimensions differ");
  for (const auto& v : K.vertices())
    if (!L.strictly_interior(v)) fail(Errc::NotStrictlyContained, "subset vertex not interior to the ambient body");

  Vec a = Vec::Zero(n);
  for (const auto& v : L.vertices()) a += v;
  a /= static_cast<double>(L.vertices().size());

  const auto flagsL = enumerate_flags(L);
  DualData dd = build_dual_data(L, a, flagsL);

  const auto flagsK = enumerate_flags(K);
  Vec b = Vec::Zero(n);
  for (const auto& v : K.vertices()) b += v;
  b /= static_cast<double>(K.vertices().size());

  const int cols = n + 1;
  std::vector<FormSimplex> roots;
  roots.reserve(flagsK.size());
  Mat E(n, n);
  for (const Flag& f : flagsK) {
    FormSimplex rs;
    rs.vals.resize(static_cast<size_t>(dd.nf) * static_cast<size_t>(cols));
    for (int j = 0; j <= n; ++j) {
      const Vec p = (j < n) ? K.face_barycenter(f[j]) : b;
      if (j < n) E.col(j) = p - b;
      for (int F = 0; F < dd.nf; ++F) {
        const double t = 1.0 - dd.q[static_cast<size_t>(F)].dot(p - a);
        if (t <= 0.0) fail(Errc::NotStrictlyContained, "subset reaches the ambient boundary");
        rs.vals[static_cast<size_t>(F) * static_cast<size_t>(cols) + static_cast<size_t>(j)] = t;
      }
    }
    rs.volume = std::abs(E.determinant()) / factorial(n);
    roots.push_back(std::move(rs));
  }

  const double wn = unit_ball_volume(n);
  QuadResult qr = integrate_form_simplices(n, dd.nf, roots, dd.density, tol * wn, opt);
  VolumeEstimate est;
  est.value = qr.value / wn;
  est.abs_error_estimate = qr.error / wn;
  est.evaluations = qr.evaluations;
  est.converged = qr.converged && est.abs_error_estimate <= tol;
  return est;
}

GradientEstimate ball_volume_gradient(const Polytope& P, const Vec& x, double R, double rel_tol,
                                      const QuadOptions& opt) {
  if (R <= 0.0) fail(Errc::NonpositiveRadius, "ball radius must be positive");
  if (!P.strictly_interior(x)) fail(Errc::PointNotInterior, "ball center not interior");
  const int n = P.dim();
  const double lambda = -std::expm1(-R);
  const double tau = std::exp(-R);
  const double wn = unit_ball_volume(n);

  GradientEstimate out;
  if (n == 1) {
    const double lo = std::min(P.vertices()[0][0], P.vertices()[1][0]);
    const double hi = std::max(P.vertices()[0][0], P.vertices()[1][0]);
    Vec bp(1), bm(1);
    bp << x[0] + lambda * (hi - x[0]);
    bm << x[0] + lambda * (lo - x[0]);
    out.gradient = Vec::Constant(1, tau / wn * (ht_density(P, bp) - ht_density(P, bm)));
    out.evaluations = 2;
    return out;
  }

  const auto flags = enumerate_flags(P);
  DualData dd = build_dual_data(P, x, flags);

  Mat a(dd.nf, dd.nf);
  for (int F = 0; F < dd.nf; ++F)
    for (int G = 0; G < dd.nf; ++G)
      a(F, G) = dd.q[static_cast<size_t>(F)].dot(dd.p_shift[static_cast<size_t>(G)]);

  // One boundary patch per facet of P: the scaled flag simplices of the facet
  // are the faces of the ball root simplices opposite the apex.
  const int nfacets = static_cast<int>(P.facets().size());
  std::vector<std::vector<FormSimplex>> patch(static_cast<size_t>(nfacets));
  const int cols = n;
  Mat E(n, n - 1);
  for (const Flag& f : flags) {
    FormSimplex rs;
    rs.vals.assign(static_cast<size_t>(dd.nf) * static_cast<size_t>(cols), 1.0);
    const int base = dd.slot_of_face[static_cast<size_t>(f[0])];
    for (int j = 0; j < n; ++j) {
      const int Gslot = dd.slot_of_face[static_cast<size_t>(f[j])];
      const VertexMask gm = dd.mask[static_cast<size_t>(Gslot)];
      if (j > 0)
        E.col(j - 1) =
            lambda * (dd.p_shift[static_cast<size_t>(Gslot)] - dd.p_shift[static_cast<size_t>(base)]);
      for (int F = 0; F < dd.nf; ++F) {
        const bool incident = (gm & dd.mask[static_cast<size_t>(F)]) == gm;
        rs.vals[static_cast<size_t>(F) * static_cast<size_t>(cols) + static_cast<size_t>(j)] =
            incident ? tau : tau + lambda * (1.0 - a(F, Gslot));
      }
    }
    rs.volume = std::sqrt((E.transpose() * E).determinant()) / factorial(n - 1);
    patch[static_cast<size_t>(P.face(f[n - 1]).facet_index)].push_back(std::move(rs));
  }

  // Pilot pass fixes the magnitude so the real tolerances can be absolute.
  double scale = 0.0;
  std::vector<double> pilot(static_cast<size_t>(nfacets));
  for (int i = 0; i < nfacets; ++i) {
    QuadResult qr = integrate_form_simplices(n - 1, dd.nf, patch[static_cast<size_t>(i)], dd.density,
                                             std::numeric_limits<double>::max(), opt);
    out.evaluations += qr.evaluations;
    pilot[static_cast<size_t>(i)] = std::abs(qr.value) + std::abs(qr.error);
    scale += pilot[static_cast<size_t>(i)];
  }

  out.gradient = Vec::Zero(n);
  double err = 0.0;
  for (int i = 0; i < nfacets; ++i) {
    const double tol = rel_tol * scale * std::max(0.05, pilot[static_cast<size_t>(i)] / scale);
    QuadResult qr =
        integrate_form_simplices(n - 1, dd.nf, patch[static_cast<size_t>(i)], dd.density, tol, opt);
    out.evaluations += qr.evaluations;
    out.converged = out.converged && qr.converged;
    err += qr.error;
    out.gradient += qr.value * P.facets()[static_cast<size_t>(i)].normal.normalized();
  }
  out.gradient *= tau / wn;
  out.abs_error_estimate = err * tau / wn;
  return out;
}

}  // namespace funkvol
