#include "funkvol/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "funkvol/errors.hpp"

namespace funkvol {

namespace {

double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

constexpr double kNeighborTol = 1e-10;

[[noreturn]] void fail_pair(int i, int j, double val) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "pairing <e_%d, v_%d> = %.17g is too close to 1", i, j, val);
  fail(Errc::DegeneratePairing, buf);
}

}  // namespace

Polygon make_polygon(std::vector<Vec> vertices) {
  int m = static_cast<int>(vertices.size());
  if (m < 3) fail(Errc::DegenerateInput, "a polygon needs at least 3 vertices");
  for (const Vec& p : vertices)
    if (p.size() != 2) fail(Errc::DegenerateInput, "polygon vertices must be 2-dimensional");

  double area2 = 0.0;
  for (int i = 0; i < m; ++i) area2 += cross2(vertices[i], vertices[(i + 1) % m]);
  if (area2 < 0) std::reverse(vertices.begin(), vertices.end());

  for (int i = 0; i < m; ++i) {
    const Vec& a = vertices[(i + m - 1) % m];
    const Vec& b = vertices[i];
    const Vec& c = vertices[(i + 1) % m];
    Vec u = b - a, w = c - b;
    double un = u.norm(), wn = w.norm();
    if (un == 0 || wn == 0) fail(Errc::DegenerateInput, "repeated polygon vertex");
    double turn = cross2(u, w) / (un * wn);
    if (turn <= 0) fail(Errc::DegenerateInput, "vertices are not in convex position");
    if (turn < 1e-8) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "consecutive edges at vertex %d are parallel to 1e-8", i);
      fail(Errc::DegenerateInput, buf);
    }
  }
  for (int i = 0; i < m; ++i)
    if (cross2(vertices[i], vertices[(i + 1) % m]) <= 0)
      fail(Errc::OriginNotInterior, "origin is not inside the polygon");

  Polygon Q;
  Q.v = std::move(vertices);
  Q.e.resize(m);
  for (int i = 0; i < m; ++i) {
    const Vec& a = Q.v[(i + m - 1) % m];
    const Vec& b = Q.v[i];
    double det = cross2(a, b);
    Vec e(2);
    e << (b[1] - a[1]) / det, (a[0] - b[0]) / det;
    if (std::abs(e.dot(a) - 1.0) > kNeighborTol || std::abs(e.dot(b) - 1.0) > kNeighborTol)
      fail(Errc::DegeneratePairing, "dual vertex pairing drifted beyond 1e-10");
    Q.e[i] = e;
  }
  return Q;
}

double polygon_c1(const Polygon& Q) {
  int m = Q.size();
  double sum = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double self = Q.e[i].dot(Q.v[j]);
      if (std::abs(self - 1.0) <= kNeighborTol) continue;
      for (int k = -1; k <= 1; k += 2) {
        double side = Q.e[i].dot(Q.v[(j + k + m) % m]);
        if (std::abs(side - 1.0) > kNeighborTol) continue;
        if (1.0 - self <= 1e-12) fail_pair(i, j, self);
        sum += 0.5 * std::log(1.0 - self);
      }
    }
  return sum;
}

double polygon_dV_dlambda(const Polygon& Q, double lambda) {
  if (lambda <= 0) fail(Errc::NonpositiveRadius, "lambda must be positive");
  if (lambda >= 1) fail(Errc::DegenerateInput, "lambda must be below 1");
  int m = Q.size();
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    int i1 = (i + 1) % m;
    for (int j = 0; j < m; ++j) {
      int j1 = (j + 1) % m;
      double a = Q.e[i].dot(Q.v[j]);
      double b = Q.e[i].dot(Q.v[j1]);
      double c = Q.e[i1].dot(Q.v[j]);
      double d = Q.e[i1].dot(Q.v[j1]);
      double N = a * d - b * c;
      double X = (1.0 - lambda * a) * (1.0 - lambda * d);
      double Y = (1.0 - lambda * b) * (1.0 - lambda * c);
      // |log(X/Y)| / |X - Y| written through u = (X-Y)/Y; the limit for
      // coinciding products and the vanishing of N = 0 terms both fall out.
      double u = (X - Y) / Y;
      double f = std::abs(u) < 1e-8 ? 1.0 - 0.5 * u + u * u / 3.0 : std::log1p(u) / u;
      sum += lambda * std::abs(N) * f / Y;
    }
  }
  // The sector decomposition of the volume counts each (edge pair, vertex
  // pair) cell with weight 1/2, which the derivative inherits.
  return 0.5 * sum;
}

std::vector<Vec> polygon_c1_gradient(const Polygon& Q) {
  int m = Q.size();
  double scale = 0.0;
  for (const Vec& p : Q.v) scale = std::max(scale, p.norm());
  double h = 1e-6 * scale;
  std::vector<Vec> grad(m, Vec::Zero(2));
  std::vector<Vec> work = Q.v;
  for (int k = 0; k < m; ++k)
    for (int c = 0; c < 2; ++c) {
      double keep = work[k][c];
      work[k][c] = keep + h;
      double hi = polygon_c1(make_polygon(work));
      work[k][c] = keep - h;
      double lo = polygon_c1(make_polygon(work));
      work[k][c] = keep;
      grad[k][c] = (hi - lo) / (2.0 * h);
    }
  return grad;
}

}  // namespace funkvol
