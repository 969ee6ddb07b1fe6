#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "funkvol/asymptotics.hpp"
#include "funkvol/errors.hpp"
#include "funkvol/funk.hpp"
#include "funkvol/polytope.hpp"
#include "oracles.hpp"

using namespace funkvol;

namespace {

Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

Polytope square() {
  return build_polytope({v2(1, 1), v2(-1, 1), v2(-1, -1), v2(1, -1)});
}

Polytope centered_triangle() {
  return build_polytope(oracle::centered_simplex_vertices(2));
}

Polytope cube3() {
  return build_polytope(oracle::cube_vertices(3));
}

// Pentagon in convex position with all five points extreme.
Polytope random_pentagon(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> jitter(-0.2, 0.2), rad(0.9, 1.1);
  for (;;) {
    std::vector<Vec> pts;
    for (int i = 0; i < 5; ++i) {
      double a = 2 * M_PI * i / 5 + jitter(rng);
      pts.push_back(v2(rad(rng) * std::cos(a), rad(rng) * std::sin(a)));
    }
    Polytope P = build_polytope(pts);
    if (static_cast<int>(P.vertices().size()) == 5) return P;
  }
}

// Interior reference points drawn as strictly positive convex combinations of
// the relevant vertex sets; the top-face anchor stays at the origin.
FlagDecomposition random_decomposition(const Polytope& P, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  const int n = P.dim();
  FlagDecomposition D;
  D.primal_point.assign(static_cast<size_t>(P.total_faces()), Vec());
  D.dual_point.assign(static_cast<size_t>(P.total_faces()), Vec());

  auto positive_mix = [&](const std::vector<Vec>& pts) {
    Vec p = Vec::Zero(n);
    double tot = 0.0;
    std::vector<double> w(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) tot += (w[i] = u(rng));
    for (size_t i = 0; i < pts.size(); ++i) p += (w[i] / tot) * pts[i];
    return p;
  };

  for (int d = 0; d <= n; ++d)
    for (int id : P.faces_of_dim(d)) {
      if (d == n) {
        D.primal_point[static_cast<size_t>(id)] = Vec::Zero(n);
        continue;
      }
      std::vector<Vec> pts;
      for (size_t i = 0; i < P.vertices().size(); ++i)
        if (P.face(id).vertices & (VertexMask{1} << i)) pts.push_back(P.vertices()[i]);
      D.primal_point[static_cast<size_t>(id)] = positive_mix(pts);
    }

  for (int d = 0; d < n; ++d)
    for (int id : P.faces_of_dim(d)) {
      std::vector<Vec> duals;
      for (int fid : P.faces_of_dim(n - 1))
        if ((P.face(id).vertices & ~P.face(fid).vertices) == 0)
          duals.push_back(P.dual_vertex(P.face(fid).facet_index));
      D.dual_point[static_cast<size_t>(id)] = positive_mix(duals);
    }
  return D;
}

// Independent 2-D oracle: angle-sorted vertices, dual vertices from pairs of
// consecutive primal vertices, complete flips written out by cyclic index.
double polygon_c1_oracle(std::vector<Vec> verts) {
  const int m = static_cast<int>(verts.size());
  std::sort(verts.begin(), verts.end(),
            [](const Vec& a, const Vec& b) { return std::atan2(a[1], a[0]) < std::atan2(b[1], b[0]); });
  auto at = [&](int i) { return verts[static_cast<size_t>(((i % m) + m) % m)]; };
  // e[i] solves <e, v_{i-1}> = <e, v_i> = 1.
  auto e = [&](int i) {
    Eigen::Matrix2d A;
    A.row(0) = at(i - 1).transpose();
    A.row(1) = at(i).transpose();
    return Vec(A.fullPivLu().solve(Eigen::Vector2d::Ones(2)));
  };
  double s = 0.0;
  for (int j = 0; j < m; ++j) {
    s += std::log(1.0 - e(j + 2).dot(at(j)));
    s += std::log(1.0 - e(j - 1).dot(at(j)));
  }
  return 0.5 * s;
}

Errc thrown_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc{-1};
}

}  // namespace

TEST_CASE("leading coefficient is the normalized flag count") {
  CHECK(c0(square()) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(c0(centered_triangle()) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(c0(cube3()) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(c0(build_polytope(oracle::cross_polytope_vertices(3))) ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  // Against the brute-force chain count.
  std::mt19937_64 rng(77);
  auto pts = oracle::random_sphere_points(rng, 3, 12);
  Vec c = Vec::Zero(3);
  for (const Vec& p : pts) c += p / static_cast<double>(pts.size());
  for (Vec& p : pts) p -= c;
  CHECK(c0(build_polytope(pts)) ==
        doctest::Approx(oracle::chain_count(pts, 3) / 36.0).epsilon(1e-12));
}

TEST_CASE("closed-form second coefficients") {
  const AsymptoticCoeffs sq = c1_flip(square());
  CHECK(sq.c1 == doctest::Approx(4 * std::log(2.0)).epsilon(1e-14));
  CHECK(sq.c0 == doctest::Approx(2.0).epsilon(1e-15));
  REQUIRE(sq.summands.size() == 8);
  for (const auto& [id, t] : sq.summands) CHECK(t == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  const AsymptoticCoeffs tri = c1_flip(centered_triangle());
  CHECK(tri.c1 == doctest::Approx(3 * std::log(3.0)).epsilon(1e-13));

  const AsymptoticCoeffs cu = c1_flip(cube3());
  CHECK(cu.c1 == doctest::Approx(4 * std::log(2.0)).epsilon(1e-13));
  REQUIRE(cu.summands.size() == 48);
  for (const auto& [id, t] : cu.summands) CHECK(t == doctest::Approx(std::log(2.0)).epsilon(1e-13));

  // Centered 3-simplex: c1 = c0 * n * log(n+1) = (2/3)*3*log 4.
  CHECK(c1_flip(build_polytope(oracle::centered_simplex_vertices(3))).c1 ==
        doctest::Approx(2.0 * std::log(4.0)).epsilon(1e-13));

  // Interval: two flags, each summand log 2.
  Vec a(1), b(1);
  a << -1.0;
  b << 1.0;
  const AsymptoticCoeffs iv = c1_flip(build_polytope({a, b}));
  CHECK(iv.c0 == doctest::Approx(2.0));
  CHECK(iv.c1 == doctest::Approx(2 * std::log(2.0)).epsilon(1e-15));

  // Regular m-gons: 2m log(2 sin(pi/m)); zero exactly at m = 6.
  for (int m : {3, 4, 5, 6, 7, 9}) {
    const Polytope P = build_polytope(oracle::regular_polygon_vertices(m));
    CHECK(c1_flip(P).c1 ==
          doctest::Approx(2 * m * std::log(2 * std::sin(M_PI / m))).epsilon(1e-12));
  }
  CHECK(std::abs(c1_flip(build_polytope(oracle::regular_polygon_vertices(6))).c1) < 1e-12);
}

TEST_CASE("flip sum matches the independent polygon oracle") {
  std::mt19937_64 rng(421);
  for (int trial = 0; trial < 12; ++trial) {
    const Polytope P = random_pentagon(rng);
    const double want = polygon_c1_oracle(P.vertices());
    CHECK(c1_flip(P).c1 == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("summands recombine to c1 and stay finite") {
  std::mt19937_64 rng(99);
  const Polytope P = random_pentagon(rng);
  const AsymptoticCoeffs ac = c1_flip(P);
  double s = 0.0;
  for (const auto& [id, t] : ac.summands) {
    CHECK(std::isfinite(t));
    s += t;
  }
  const int n = P.dim();
  CHECK(ac.c1 == doctest::Approx(n / (factorial(n) * factorial(n)) * s).epsilon(1e-15));
}

TEST_CASE("decomposition independence") {
  std::mt19937_64 rng(2024);
  for (const Polytope& P :
       {square(), centered_triangle(), random_pentagon(rng), cube3()}) {
    const double want = c1_flip(P).c1;
    CHECK(c1_decomposed(P, default_decomposition(P)) == doctest::Approx(want).epsilon(1e-11));
    for (int trial = 0; trial < 20; ++trial) {
      const FlagDecomposition D = random_decomposition(P, rng);
      CHECK(std::abs(c1_decomposed(P, D) - want) < 1e-9);
    }
  }
}

TEST_CASE("decomposed sum rejects anchors away from the origin") {
  const Polytope P = square();
  FlagDecomposition D = default_decomposition(P);
  D.primal_point[static_cast<size_t>(P.top_face_id())] = v2(0.2, 0.0);
  CHECK(thrown_code([&] { c1_decomposed(P, D); }) == Errc::DegenerateInput);
}

TEST_CASE("per-flag correction pairs are nonnegative") {
  std::mt19937_64 rng(7);
  auto pts = oracle::random_sphere_points(rng, 3, 10);
  Vec c = Vec::Zero(3);
  for (const Vec& p : pts) c += p / static_cast<double>(pts.size());
  for (Vec& p : pts) p -= c;

  // Per neighbouring dual flag, the correction is nonnegative: the plain
  // difference at i = 0, and the cross-ratio combination with the unflipped
  // dual points at i >= 1 (the wedge inequality).
  for (const Polytope& P : {random_pentagon(rng), build_polytope(pts)}) {
    const int n = P.dim();
    const FlagDecomposition D = random_decomposition(P, rng);
    auto L = [&](int dual_face, int primal_face) {
      return std::log(1.0 - D.dual_point[static_cast<size_t>(dual_face)].dot(
                                D.primal_point[static_cast<size_t>(primal_face)]));
    };
    for (const Flag& f : enumerate_flags(P)) {
      for (int i = 0; i < n; ++i) {
        const Flag g = flip(P, f, i);
        const int fi = f[i];
        const int fnext = f.face[static_cast<size_t>(i + 1)];
        double corr = L(g[i], fi) - L(g[i], fnext);
        if (i >= 1) corr += L(f[i - 1], fnext) - L(f[i - 1], fi);
        CHECK(corr >= -1e-12);
      }
    }
  }
}

TEST_CASE("linear invariance of the flip sum") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const Polytope& P : {centered_triangle(), random_pentagon(rng), cube3()}) {
    const int n = P.dim();
    const double want = c1_flip(P).c1;
    for (int trial = 0; trial < 5; ++trial) {
      Mat A(n, n);
      do {
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) A(i, j) = u(rng);
      } while (std::abs(A.determinant()) < 0.3);
      std::vector<Vec> pts;
      for (const Vec& v : P.vertices()) pts.push_back(A * v);
      CHECK(std::abs(c1_flip(build_polytope(pts)).c1 - want) < 1e-9);
    }
  }
}

TEST_CASE("expansion center dependence") {
  const Polytope P = square();
  const double at0 = c1_at_point(P, Vec::Zero(2));
  CHECK(at0 == doctest::Approx(c1_flip(P).c1).epsilon(1e-14));
  CHECK(c1_at_point(P, v2(0.3, 0.0)) > at0);

  // Facet-weighted form: c1(x) = c1(0) - n/(n!)^2 sum_F |flags(F)| log(1-<q_F,x>).
  std::mt19937_64 rng(88);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (const Polytope& Q : {square(), random_pentagon(rng), cube3()}) {
    const int n = Q.dim();
    const double base = c1_flip(Q).c1;
    for (int trial = 0; trial < 8; ++trial) {
      Vec x(n);
      for (int i = 0; i < n; ++i) x[i] = 0.4 * u(rng);
      if (!Q.strictly_interior(x)) continue;
      double corr = 0.0;
      for (int fid : Q.faces_of_dim(n - 1)) {
        const Vec q = Q.dual_vertex(Q.face(fid).facet_index);
        corr -= Q.flags_below(fid) * std::log(1.0 - q.dot(x));
      }
      const double want = base + n / (factorial(n) * factorial(n)) * corr;
      CHECK(c1_at_point(Q, x) == doctest::Approx(want).epsilon(1e-10));
    }
  }
}

TEST_CASE("center functional is midpoint convex and blows up at the boundary") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  const Polytope P = random_pentagon(rng);
  for (int trial = 0; trial < 30; ++trial) {
    Vec x = v2(u(rng), u(rng)), y = v2(u(rng), u(rng));
    if (!P.strictly_interior(x) || !P.strictly_interior(y)) continue;
    const Vec mid = 0.5 * (x + y);
    CHECK(c1_at_point(P, mid) <= 0.5 * (c1_at_point(P, x) + c1_at_point(P, y)) + 1e-12);
  }

  const Vec v = P.vertices()[0];
  double prev = c1_at_point(P, Vec::Zero(2));
  double last = prev;
  for (int k = 2; k <= 14; ++k) {
    const double val = c1_at_point(P, Vec((1.0 - std::pow(2.0, -k)) * v));
    CHECK(val > prev);
    prev = val;
    last = val;
  }
  CHECK(last > c1_at_point(P, Vec::Zero(2)) + 10.0);

  CHECK(thrown_code([&] { c1_at_point(P, Vec(1.0001 * v)); }) == Errc::PointNotInterior);
  CHECK(thrown_code([&] { c1_at_point(P, v); }) == Errc::PointNotInterior);
}

TEST_CASE("numeric fit recovers both coefficients on the square") {
  const Polytope P = square();
  const CoeffFit fit = fit_coeffs_numeric(P, Vec::Zero(2), {9.0, 12.0, 15.0}, 1e-5);
  CHECK(fit.converged);
  CHECK(fit.evaluations > 0);
  CHECK(std::abs(fit.c0 - 2.0) < 0.01 * 2.0);
  CHECK(std::abs(fit.c1 - 4 * std::log(2.0)) < 0.05 * 4 * std::log(2.0));
  REQUIRE(fit.scaled_volumes.size() == 3);
  // ball volumes scaled by omega_2 follow Lemma 3.4's closed form (Hanner).
  for (size_t i = 0; i < 3; ++i) {
    const double R = std::vector<double>{9.0, 12.0, 15.0}[i];
    const double want = 2.0 * std::pow(R + std::log(2.0 - std::exp(-R)), 2.0);
    CHECK(fit.scaled_volumes[i] == doctest::Approx(want).epsilon(1e-4));
  }
}

TEST_CASE("fit grid validation") {
  const Polytope P = square();
  const Vec z = Vec::Zero(2);
  CHECK(thrown_code([&] { fit_coeffs_numeric(P, z, {10.0, 16.0}); }) == Errc::DegenerateInput);
  CHECK(thrown_code([&] { fit_coeffs_numeric(P, z, {10.0, 9.0, 16.0}); }) == Errc::DegenerateInput);
  CHECK(thrown_code([&] { fit_coeffs_numeric(P, z, {4.0, 6.0, 8.0}); }) == Errc::DegenerateInput);
  CHECK(thrown_code([&] { fit_coeffs_numeric(P, z, {-1.0, 6.0, 16.0}); }) == Errc::NonpositiveRadius);
}

TEST_CASE("flag pairing equality for Hanner-type inputs") {
  CHECK(flag_equality_check(cube3()));
  CHECK(flag_equality_check(build_polytope(oracle::cross_polytope_vertices(3))));
  CHECK(flag_equality_check(square()));
  // Any parallelogram is a linear image of the square.
  CHECK(flag_equality_check(build_polytope({v2(1, 0.2), v2(0.4, 1), v2(-1, -0.2), v2(-0.4, -1)})));

  CHECK(thrown_code([&] { flag_equality_check(build_polytope(oracle::regular_polygon_vertices(6))); }) ==
        Errc::WrongFlagCount);
  CHECK(thrown_code([&] { flag_equality_check(centered_triangle()); }) ==
        Errc::NotCentrallySymmetric);
}

TEST_CASE("degenerate pairing is reported") {
  // Valid lattices cannot degenerate, so poke a decomposition: give vertex b
  // of some edge [a,b] the dual point a/|a|^2. The flag (a, [a,b], P) flipped
  // at dimension 0 then pairs that dual point with p(a) at inner product 1.
  const Polytope P = square();
  FlagDecomposition D = default_decomposition(P);
  const Face& edge = P.face(P.faces_of_dim(1)[0]);
  std::vector<int> ends;
  for (int id : P.faces_of_dim(0))
    if ((P.face(id).vertices & ~edge.vertices) == 0) ends.push_back(id);
  REQUIRE(ends.size() == 2);
  const Vec& a = P.vertex_of_face(ends[0]);
  D.dual_point[static_cast<size_t>(ends[1])] = a / a.squaredNorm();
  CHECK(thrown_code([&] { c1_decomposed(P, D); }) == Errc::DegeneratePairing);
}
