#include "funkvol/polytope.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <unordered_set>

#include "funkvol/errors.hpp"

namespace funkvol {

namespace {

int linear_rank(const Mat& A, double tol_rel = 1e-6) {
  if (A.rows() == 0 || A.cols() == 0) return 0;
  Eigen::FullPivLU<Mat> lu(A);
  lu.setThreshold(tol_rel);
  return static_cast<int>(lu.rank());
}

int affine_rank(const std::vector<Vec>& pts, const std::vector<int>& idx) {
  if (idx.size() <= 1) return 0;
  Mat D(static_cast<long>(idx.size()) - 1, pts[0].size());
  for (size_t k = 1; k < idx.size(); ++k)
    D.row(static_cast<long>(k) - 1) = (pts[static_cast<size_t>(idx[k])] - pts[static_cast<size_t>(idx[0])]).transpose();
  return linear_rank(D);
}

std::vector<int> mask_indices(VertexMask m) {
  std::vector<int> out;
  while (m) {
    int i = __builtin_ctzll(m);
    out.push_back(i);
    m &= m - 1;
  }
  return out;
}

// One vertex of the partially built polar region together with the set of
// input points whose constraint <h, w_i> <= 1 is tight there.
struct DualVert {
  Vec h;
  double hnorm = 0.0;
  VertexMask tight = 0;
};

struct HullData {
  std::vector<Vec> verts;
  std::vector<Facet> facets;  // original coordinates, <u,x> <= c
  std::vector<VertexMask> fmask;
};

// Vertex-to-facet conversion by incremental cutting of the polar region
// (double-description style): each input point is one constraint; inserting it
// cuts the current polar at the hyperplane <h, w> = 1, and new polar vertices
// appear on edges between kept and cut ones. Adjacency of polar vertices is
// decided combinatorially from tight sets.
HullData dd_hull(const std::vector<Vec>& pts) {
  const int n = static_cast<int>(pts[0].size());
  const int m = static_cast<int>(pts.size());

  std::vector<int> simplex{0};
  for (int i = 1; i < m && static_cast<int>(simplex.size()) < n + 1; ++i) {
    simplex.push_back(i);
    if (affine_rank(pts, simplex) != static_cast<int>(simplex.size()) - 1) simplex.pop_back();
  }
  if (static_cast<int>(simplex.size()) != n + 1)
    fail(Errc::DegenerateInput, "vertex cloud is not full-dimensional");

  Vec c0 = Vec::Zero(n);
  for (int i : simplex) c0 += pts[static_cast<size_t>(i)];
  c0 /= static_cast<double>(n + 1);

  std::vector<Vec> W(static_cast<size_t>(m));
  std::vector<double> wnorm(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    W[static_cast<size_t>(i)] = pts[static_cast<size_t>(i)] - c0;
    wnorm[static_cast<size_t>(i)] = W[static_cast<size_t>(i)].norm();
  }

  std::vector<DualVert> dual;
  for (int skip = 0; skip <= n; ++skip) {
    Mat A(n, n);
    VertexMask tight = 0;
    int r = 0;
    for (int k = 0; k <= n; ++k) {
      if (k == skip) continue;
      A.row(r++) = W[static_cast<size_t>(simplex[static_cast<size_t>(k)])].transpose();
      tight |= VertexMask{1} << simplex[static_cast<size_t>(k)];
    }
    DualVert d;
    d.h = A.partialPivLu().solve(Vec::Ones(n));
    d.hnorm = d.h.norm();
    d.tight = tight;
    dual.push_back(std::move(d));
  }

  VertexMask processed = 0;
  for (int i : simplex) processed |= VertexMask{1} << i;

  for (int t = 0; t < m; ++t) {
    if (processed & (VertexMask{1} << t)) continue;
    processed |= VertexMask{1} << t;

    std::vector<int> ins, outs;
    for (int d = 0; d < static_cast<int>(dual.size()); ++d) {
      double val = dual[static_cast<size_t>(d)].h.dot(W[static_cast<size_t>(t)]);
      double eps = kIncidenceEps * (1.0 + dual[static_cast<size_t>(d)].hnorm * wnorm[static_cast<size_t>(t)]);
      if (val > 1.0 + eps) {
        outs.push_back(d);
      } else {
        ins.push_back(d);
        if (val > 1.0 - eps) dual[static_cast<size_t>(d)].tight |= VertexMask{1} << t;
      }
    }
    if (outs.empty()) continue;  // point inside current hull, constraint redundant
    if (ins.empty()) fail(Errc::DegenerateInput, "hull numerics failed (no polar vertex kept)");

    std::vector<DualVert> fresh;
    for (int a : ins) {
      const DualVert& da = dual[static_cast<size_t>(a)];
      if (da.tight & (VertexMask{1} << t)) continue;  // on the cut plane, stays as-is
      for (int b : outs) {
        const DualVert& db = dual[static_cast<size_t>(b)];
        VertexMask z = da.tight & db.tight;
        if (popcount(z) < n - 1) continue;
        bool adjacent = true;
        for (int c = 0; c < static_cast<int>(dual.size()) && adjacent; ++c) {
          if (c == a || c == b) continue;
          if ((z & dual[static_cast<size_t>(c)].tight) == z) adjacent = false;
        }
        if (!adjacent) continue;
        double va = da.h.dot(W[static_cast<size_t>(t)]);
        double vb = db.h.dot(W[static_cast<size_t>(t)]);
        double s = (1.0 - va) / (vb - va);
        DualVert nd;
        nd.h = da.h + s * (db.h - da.h);
        nd.hnorm = nd.h.norm();
        nd.tight = z | (VertexMask{1} << t);
        fresh.push_back(std::move(nd));
      }
    }
    std::vector<DualVert> next;
    next.reserve(ins.size() + fresh.size());
    for (int a : ins) next.push_back(std::move(dual[static_cast<size_t>(a)]));
    for (auto& d : fresh) next.push_back(std::move(d));
    dual.swap(next);
  }

  // Clean the interpolated normals: re-solve <h, w_i> = 1 over each tight set,
  // then recompute tight sets against the refined hyperplanes.
  for (auto& d : dual) {
    auto idx = mask_indices(d.tight);
    Mat A(static_cast<long>(idx.size()), n);
    for (size_t k = 0; k < idx.size(); ++k) A.row(static_cast<long>(k)) = W[static_cast<size_t>(idx[k])].transpose();
    Vec h = A.colPivHouseholderQr().solve(Vec::Ones(static_cast<long>(idx.size())));
    if (h.allFinite()) {
      d.h = h;
      d.hnorm = h.norm();
    }
  }
  for (auto& d : dual) {
    d.tight = 0;
    for (int i = 0; i < m; ++i) {
      double val = d.h.dot(W[static_cast<size_t>(i)]);
      double eps = kIncidenceEps * (1.0 + d.hnorm * wnorm[static_cast<size_t>(i)]);
      if (val > 1.0 + 100.0 * eps) fail(Errc::DegenerateInput, "hull numerics failed (support check)");
      if (val > 1.0 - eps) d.tight |= VertexMask{1} << i;
    }
  }

  // Merge duplicates (possible after tolerance-driven cuts).
  std::vector<DualVert> uniq;
  for (auto& d : dual) {
    bool dup = false;
    for (auto& u : uniq) {
      if ((u.h - d.h).norm() <= 1e-7 * (1.0 + u.hnorm)) {
        u.tight |= d.tight;
        dup = true;
        break;
      }
    }
    if (!dup) uniq.push_back(std::move(d));
  }
  for (const auto& d : uniq) {
    if (popcount(d.tight) < n || affine_rank(pts, mask_indices(d.tight)) != n - 1)
      fail(Errc::DegenerateInput, "facet with deficient vertex set");
  }

  // A point is extreme iff its active facet normals span R^n.
  std::vector<int> keep;
  std::vector<int> remap(static_cast<size_t>(m), -1);
  for (int i = 0; i < m; ++i) {
    std::vector<Vec> act;
    for (const auto& d : uniq)
      if (d.tight & (VertexMask{1} << i)) act.push_back(d.h);
    if (static_cast<int>(act.size()) < n) continue;
    Mat N(static_cast<long>(act.size()), n);
    for (size_t k = 0; k < act.size(); ++k) N.row(static_cast<long>(k)) = act[k].transpose();
    if (linear_rank(N) == n) {
      remap[static_cast<size_t>(i)] = static_cast<int>(keep.size());
      keep.push_back(i);
    }
  }
  if (static_cast<int>(keep.size()) < n + 1) fail(Errc::DegenerateInput, "fewer than n+1 extreme points");

  HullData out;
  for (int i : keep) out.verts.push_back(pts[static_cast<size_t>(i)]);
  struct Row {
    VertexMask mask;
    Vec u;
    double c;
  };
  std::vector<Row> rows;
  for (const auto& d : uniq) {
    Row r;
    r.mask = 0;
    for (int i : mask_indices(d.tight))
      if (remap[static_cast<size_t>(i)] >= 0) r.mask |= VertexMask{1} << remap[static_cast<size_t>(i)];
    r.u = d.h;
    r.c = 1.0 + d.h.dot(c0);
    rows.push_back(std::move(r));
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.mask < b.mask; });
  for (auto& r : rows) {
    out.facets.push_back(Facet{r.u, r.c});
    out.fmask.push_back(r.mask);
  }
  return out;
}

}  // namespace

Polytope build_polytope(const std::vector<Vec>& points) {
  if (points.empty()) fail(Errc::EmptyInput, "no vertices given");
  const int n = static_cast<int>(points[0].size());
  if (n < 1 || n > kMaxDim)
    fail(Errc::DimensionTooLarge, "ambient dimension must be between 1 and " + std::to_string(kMaxDim));
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != n) fail(Errc::DegenerateInput, "inconsistent vertex dimensions");

  double scale = 1.0;
  for (const auto& p : points) scale = std::max(scale, p.lpNorm<Eigen::Infinity>());

  std::vector<Vec> pts;
  for (const auto& p : points) {
    bool dup = false;
    for (const auto& q : pts)
      if ((p - q).lpNorm<Eigen::Infinity>() <= kIncidenceEps * scale) {
        dup = true;
        break;
      }
    if (!dup) pts.push_back(p);
  }
  if (static_cast<int>(pts.size()) > kMaxVertices)
    fail(Errc::TooManyVertices, "more than " + std::to_string(kMaxVertices) + " distinct vertices");
  if (static_cast<int>(pts.size()) < n + 1) fail(Errc::DegenerateInput, "fewer than n+1 distinct points");

  HullData hull = dd_hull(pts);

  Polytope P;
  P.n_ = n;
  P.vertices_ = hull.verts;
  P.scale_ = 1.0;
  for (const auto& v : P.vertices_) P.scale_ = std::max(P.scale_, v.lpNorm<Eigen::Infinity>());

  // Offset-1 normalization when the origin is interior, unit normals otherwise.
  P.origin_interior_ = true;
  for (const auto& f : hull.facets)
    if (f.offset <= kIncidenceEps * (1.0 + f.normal.norm() * P.scale_)) P.origin_interior_ = false;
  P.facets_.reserve(hull.facets.size());
  for (const auto& f : hull.facets) {
    if (P.origin_interior_)
      P.facets_.push_back(Facet{f.normal / f.offset, 1.0});
    else
      P.facets_.push_back(Facet{f.normal / f.normal.norm(), f.offset / f.normal.norm()});
  }

  // Face lattice: close the facet vertex sets under intersection; every proper
  // face of a polytope is such an intersection and each intersection is a face.
  const VertexMask full =
      (P.vertices_.size() == 64) ? ~VertexMask{0} : ((VertexMask{1} << P.vertices_.size()) - 1);
  std::unordered_set<VertexMask> seen(hull.fmask.begin(), hull.fmask.end());
  std::vector<VertexMask> work(seen.begin(), seen.end());
  while (!work.empty()) {
    VertexMask s = work.back();
    work.pop_back();
    for (VertexMask f : hull.fmask) {
      VertexMask t = s & f;
      if (seen.insert(t).second) work.push_back(t);
    }
  }
  seen.insert(VertexMask{0});
  seen.insert(full);

  struct Proto {
    VertexMask mask;
    int dim;
  };
  std::vector<Proto> protos;
  for (VertexMask msk : seen) {
    int d;
    if (msk == 0)
      d = -1;
    else if (msk == full)
      d = n;
    else
      d = affine_rank(P.vertices_, mask_indices(msk));
    protos.push_back(Proto{msk, d});
  }
  std::sort(protos.begin(), protos.end(), [](const Proto& a, const Proto& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.mask < b.mask;
  });

  P.by_dim_.assign(static_cast<size_t>(n + 2), {});
  std::map<VertexMask, int> facet_by_mask;
  for (size_t i = 0; i < hull.fmask.size(); ++i) facet_by_mask[hull.fmask[i]] = static_cast<int>(i);
  for (const auto& pr : protos) {
    Face F;
    F.dim = pr.dim;
    F.vertices = pr.mask;
    if (pr.dim == n - 1) {
      auto it = facet_by_mask.find(pr.mask);
      if (it == facet_by_mask.end()) fail(Errc::DegenerateInput, "face lattice / facet mismatch");
      F.facet_index = it->second;
    }
    int id = static_cast<int>(P.faces_.size());
    P.by_dim_[static_cast<size_t>(pr.dim + 1)].push_back(id);
    P.faces_.push_back(std::move(F));
  }
  if (P.face_count(0) != static_cast<int>(P.vertices_.size()))
    fail(Errc::DegenerateInput, "face lattice lost vertices");
  if (P.face_count(n - 1) != static_cast<int>(P.facets_.size()))
    fail(Errc::DegenerateInput, "face lattice lost facets");

  for (int d = -1; d < n; ++d) {
    for (int a : P.by_dim_[static_cast<size_t>(d + 1)]) {
      for (int b : P.by_dim_[static_cast<size_t>(d + 2)]) {
        const VertexMask ma = P.faces_[static_cast<size_t>(a)].vertices;
        const VertexMask mb = P.faces_[static_cast<size_t>(b)].vertices;
        if ((ma & mb) == ma && ma != mb) {
          P.faces_[static_cast<size_t>(a)].up.push_back(b);
          P.faces_[static_cast<size_t>(b)].down.push_back(a);
        }
      }
    }
  }

  // Diamond property: every interval of length two has exactly two interior
  // elements. This doubles as a sanity check of the tolerance decisions.
  for (int d = -1; d <= n - 2; ++d) {
    for (int a : P.by_dim_[static_cast<size_t>(d + 1)]) {
      std::map<int, int> paths;
      for (int b : P.faces_[static_cast<size_t>(a)].up)
        for (int c : P.faces_[static_cast<size_t>(b)].up) paths[c]++;
      for (auto [c, cnt] : paths)
        if (cnt != 2) fail(Errc::DegenerateInput, "face lattice violates the diamond property");
    }
  }
  long euler = 0;
  for (int d = 0; d < n; ++d) euler += (d % 2 == 0 ? 1 : -1) * P.face_count(d);
  if (euler != 1 - ((n % 2 == 0) ? 1 : -1)) fail(Errc::DegenerateInput, "Euler relation violated");

  P.flags_below_.assign(P.faces_.size(), 0.0);
  P.flags_below_[static_cast<size_t>(P.empty_face_id())] = 1.0;
  for (int d = 0; d <= n; ++d)
    for (int id : P.by_dim_[static_cast<size_t>(d + 1)])
      for (int g : P.faces_[static_cast<size_t>(id)].down)
        P.flags_below_[static_cast<size_t>(id)] += P.flags_below_[static_cast<size_t>(g)];

  return P;
}

Vec Polytope::dual_vertex(int facet_index) const {
  if (!origin_interior_) fail(Errc::OriginNotInterior, "polar vertices need the origin interior");
  return facets_[static_cast<size_t>(facet_index)].normal;
}

const Vec& Polytope::vertex_of_face(int face_id) const {
  const Face& F = faces_[static_cast<size_t>(face_id)];
  return vertices_[static_cast<size_t>(__builtin_ctzll(F.vertices))];
}

bool Polytope::contains(const Vec& x, double slack) const {
  for (const auto& f : facets_) {
    double margin = kIncidenceEps * (1.0 + f.normal.norm() * x.norm());
    if (f.normal.dot(x) - f.offset > slack + margin) return false;
  }
  return true;
}

bool Polytope::strictly_interior(const Vec& x) const {
  for (const auto& f : facets_) {
    double margin = kIncidenceEps * (1.0 + f.normal.norm() * x.norm());
    if (f.normal.dot(x) - f.offset > -margin) return false;
  }
  return true;
}

Vec Polytope::face_barycenter(int face_id) const {
  const Face& F = faces_[static_cast<size_t>(face_id)];
  Vec b = Vec::Zero(n_);
  auto idx = mask_indices(F.vertices);
  for (int i : idx) b += vertices_[static_cast<size_t>(i)];
  return b / static_cast<double>(idx.size());
}

Polytope polar_dual(const Polytope& P, const Vec& x) {
  if (!P.origin_interior()) fail(Errc::OriginNotInterior, "polar dual needs the origin interior");
  if (!P.strictly_interior(x)) fail(Errc::PointNotInterior, "polar base point not interior");
  std::vector<Vec> verts;
  verts.reserve(P.facets().size());
  for (const auto& f : P.facets()) {
    double denom = 1.0 - f.normal.dot(x);
    if (denom <= kIncidenceEps) fail(Errc::PointNotInterior, "polar base point too close to the boundary");
    verts.push_back(f.normal / denom);
  }
  return build_polytope(verts);
}

std::vector<Flag> enumerate_flags(const Polytope& P) {
  const int n = P.dim();
  std::vector<Flag> out;
  Flag cur;
  cur.n = n;
  auto dfs = [&](auto&& self, int d, int id) -> void {
    cur.face[static_cast<size_t>(d)] = id;
    if (d == n) {
      out.push_back(cur);
      return;
    }
    for (int up : P.face(id).up) self(self, d + 1, up);
  };
  for (int v : P.faces_of_dim(0)) dfs(dfs, 0, v);
  return out;
}

Flag flip(const Polytope& P, const Flag& f, int i) {
  const int n = P.dim();
  if (i < 0 || i >= n) fail(Errc::DegenerateInput, "flip index out of range");
  const VertexMask below = (i == 0) ? VertexMask{0} : P.face(f[i - 1]).vertices;
  Flag g = f;
  for (int cand : P.face(f[i + 1]).down) {
    if (cand == f[i]) continue;
    const VertexMask mc = P.face(cand).vertices;
    if ((below & mc) == below) {
      g.face[static_cast<size_t>(i)] = cand;
      return g;
    }
  }
  fail(Errc::DegenerateInput, "flip candidate missing (broken lattice)");
}

Flag complete_flip(const Polytope& P, const Flag& f) {
  Flag g = f;
  for (int i = 0; i < P.dim(); ++i) g = flip(P, g, i);
  return g;
}

Polytope apply_collineation(const Polytope& P, const Mat& M) {
  const int n = P.dim();
  if (M.rows() != n + 1 || M.cols() != n + 1) fail(Errc::DegenerateInput, "collineation matrix has wrong shape");
  Eigen::FullPivLU<Mat> lu(M);
  if (!lu.isInvertible()) fail(Errc::DegenerateInput, "collineation matrix is singular");
  const Mat A = M.topLeftCorner(n, n);
  const Vec b = M.topRightCorner(n, 1);
  const Vec c = M.bottomLeftCorner(1, n).transpose();
  const double d = M(n, n);
  std::vector<Vec> verts;
  verts.reserve(P.vertices().size());
  for (const auto& v : P.vertices()) {
    double w = c.dot(v) + d;
    if (w <= kIncidenceEps * (1.0 + c.norm() * v.norm() + std::abs(d)))
      fail(Errc::MapsThroughInfinity, "image vertex has nonpositive homogeneous coordinate");
    verts.push_back((A * v + b) / w);
  }
  return build_polytope(verts);
}

FlagDecomposition anchored_decomposition(const Polytope& P, const Vec& anchor) {
  const int n = P.dim();
  if (!P.strictly_interior(anchor)) fail(Errc::PointNotInterior, "decomposition anchor not interior");
  FlagDecomposition D;
  D.primal_point.assign(static_cast<size_t>(P.total_faces()), Vec());
  D.dual_point.assign(static_cast<size_t>(P.total_faces()), Vec());
  for (int d = 0; d < n; ++d)
    for (int id : P.faces_of_dim(d)) D.primal_point[static_cast<size_t>(id)] = P.face_barycenter(id);
  D.primal_point[static_cast<size_t>(P.top_face_id())] = anchor;

  if (P.origin_interior()) {
    for (int d = 0; d < n; ++d) {
      for (int id : P.faces_of_dim(d)) {
        const VertexMask mask = P.face(id).vertices;
        Vec q = Vec::Zero(n);
        int cnt = 0;
        for (int fid : P.faces_of_dim(n - 1)) {
          const Face& F = P.face(fid);
          if ((mask & F.vertices) == mask) {
            q += P.dual_vertex(F.facet_index);
            ++cnt;
          }
        }
        D.dual_point[static_cast<size_t>(id)] = q / static_cast<double>(cnt);
      }
    }
  }
  return D;
}

FlagDecomposition default_decomposition(const Polytope& P) {
  if (!P.origin_interior()) fail(Errc::OriginNotInterior, "default decomposition anchors at the origin");
  return anchored_decomposition(P, Vec::Zero(P.dim()));
}

FlagDecomposition random_decomposition(const Polytope& P, unsigned long long seed) {
  if (!P.origin_interior()) fail(Errc::OriginNotInterior, "random decomposition anchors at the origin");
  const int n = P.dim();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  auto positive_mix = [&](const std::vector<Vec>& pts) {
    std::vector<double> w(pts.size());
    double tot = 0.0;
    for (double& wi : w) tot += (wi = u(rng));
    Vec p = Vec::Zero(n);
    for (size_t i = 0; i < pts.size(); ++i) p += (w[i] / tot) * pts[i];
    return p;
  };

  FlagDecomposition D;
  D.primal_point.assign(static_cast<size_t>(P.total_faces()), Vec());
  D.dual_point.assign(static_cast<size_t>(P.total_faces()), Vec());
  for (int d = 0; d < n; ++d)
    for (int id : P.faces_of_dim(d)) {
      std::vector<Vec> pts;
      for (size_t i = 0; i < P.vertices().size(); ++i)
        if (P.face(id).vertices & (VertexMask{1} << i)) pts.push_back(P.vertices()[i]);
      D.primal_point[static_cast<size_t>(id)] = positive_mix(pts);

      std::vector<Vec> duals;
      for (int fid : P.faces_of_dim(n - 1))
        if ((P.face(id).vertices & ~P.face(fid).vertices) == 0)
          duals.push_back(P.dual_vertex(P.face(fid).facet_index));
      D.dual_point[static_cast<size_t>(id)] = positive_mix(duals);
    }
  D.primal_point[static_cast<size_t>(P.top_face_id())] = Vec::Zero(n);
  return D;
}

double flag_simplex_volume(const Polytope& P, const FlagDecomposition& D, const Flag& f) {
  const int n = P.dim();
  const Vec& apex = D.primal_point[static_cast<size_t>(f[n])];
  Mat A(n, n);
  for (int i = 0; i < n; ++i) A.col(i) = D.primal_point[static_cast<size_t>(f[i])] - apex;
  return std::abs(A.determinant()) / factorial(n);
}

}  // namespace funkvol
