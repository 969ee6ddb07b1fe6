#pragma once

#include <atomic>
#include <cmath>
#include <cstring>
#include <limits>
#include <utility>
#include <vector>

#include "funkvol/errors.hpp"
#include "funkvol/types.hpp"

namespace funkvol {

// Symmetric interior rule on the n-simplex of algebraic degree 2s+1
// (Grundmann-Moeller). Points are barycentric; weights sum to one, so a rule
// application is (simplex volume) * (weighted mean of integrand values).
struct GMRule {
  int n = 0;
  int s = 0;
  int npts = 0;
  std::vector<double> bary;    // npts x (n+1)
  std::vector<double> weight;  // npts, sums to 1
};

GMRule grundmann_moeller(int n, int s);

// A simplex represented through the values of nf fixed affine forms at its
// n+1 vertices (column j = vertex j). Subdividing and sampling happen in form
// space, so strictly positive forms stay strictly positive: no cancellation
// near the blow-up locus of the integrands used here.
struct FormSimplex {
  std::vector<double> vals;  // nf x (n+1), form-major
  double volume = 0.0;
};

struct QuadOptions {
  int max_halvings = 40;  // cap on diameter halvings along any refinement lineage
  bool parallel = true;
  int rule_s = 7;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  long long evaluations = 0;
  bool converged = true;
};

// Accepted cells of one adaptive run, as barycentric matrices relative to
// their root simplex. Re-applying the rule on these cells reproduces the
// adaptive value exactly and varies smoothly under perturbations of the root.
struct FrozenLeaf {
  std::vector<double> bary;  // (n+1) x (n+1); entry [i][j] = weight of root vertex i in leaf vertex j
  double volfrac = 0.0;      // leaf volume / root volume
};
using FrozenPartition = std::vector<std::vector<FrozenLeaf>>;  // per root

namespace detail {

inline constexpr int kMaxForms = 512;
inline constexpr int kTaskBisections = 8;  // spawn tasks only this deep
inline constexpr double kSweepRatio = 16.0;  // max per-form spread before the rule is consulted

template <class F>
class AdaptiveRun {
 public:
  AdaptiveRun(const GMRule& rule, const GMRule& low, const F& f, int n, int nf, int max_bisect,
              bool parallel, double rel_accept, std::vector<FrozenLeaf>* sink)
      : rule_(rule), low_(low), f_(f), n_(n), nf_(nf), max_bisect_(max_bisect), parallel_(parallel),
        rel_accept_(rel_accept), sink_(sink) {
    if (nf_ > kMaxForms) fail(Errc::DegenerateInput, "too many affine forms for the quadrature engine");
  }

  struct Cell {
    std::vector<double> vals;
    std::vector<double> bary;  // only tracked when collecting leaves
    double vol = 0.0;
    int bis = 0;
  };

  // absacc reports the sum of absolute rule contributions: the rule weights
  // alternate in sign, so this (not |result|) sets the rounding floor.
  double apply_rule(const GMRule& rule, const Cell& c, double* absacc = nullptr) {
    const int cols = n_ + 1;
    double t[kMaxForms];
    double acc = 0.0, aabs = 0.0;
    for (int k = 0; k < rule.npts; ++k) {
      const double* b = &rule.bary[static_cast<size_t>(k) * static_cast<size_t>(cols)];
      for (int fo = 0; fo < nf_; ++fo) {
        const double* row = &c.vals[static_cast<size_t>(fo) * static_cast<size_t>(cols)];
        double v = 0.0;
        for (int j = 0; j < cols; ++j) v += b[j] * row[j];
        t[fo] = v;
      }
      const double contrib = rule.weight[static_cast<size_t>(k)] * f_(t);
      acc += contrib;
      aabs += std::abs(contrib);
    }
    evals_.fetch_add(rule.npts, std::memory_order_relaxed);
    if (absacc) *absacc = std::abs(c.vol) * aabs;
    return c.vol * acc;
  }

  // Make the child cell that keeps everything of c except that vertex slot
  // `drop` is replaced by the point at parameter alpha along the edge from
  // vertex ki to vertex kj. When the split realizes a level-set cut of form
  // fs the new vertex value of that form is pinned to the cut value exactly,
  // so later side classifications of descendants cannot flip by roundoff.
  void edge_child(const Cell& c, int ki, int kj, double alpha, int drop, int fs, double cut,
                  Cell& out) const {
    const int cols = n_ + 1;
    out.vals = c.vals;
    for (int fo = 0; fo < nf_; ++fo) {
      const double* r = &c.vals[static_cast<size_t>(fo) * static_cast<size_t>(cols)];
      out.vals[static_cast<size_t>(fo) * static_cast<size_t>(cols) + static_cast<size_t>(drop)] =
          fo == fs ? cut : (1.0 - alpha) * r[ki] + alpha * r[kj];
    }
    if (!c.bary.empty()) {
      out.bary = c.bary;
      for (int r = 0; r < cols; ++r) {
        const double* b = &c.bary[static_cast<size_t>(r) * static_cast<size_t>(cols)];
        out.bary[static_cast<size_t>(r) * static_cast<size_t>(cols) + static_cast<size_t>(drop)] =
            (1.0 - alpha) * b[ki] + alpha * b[kj];
      }
    }
    out.vol = (drop == kj ? alpha : 1.0 - alpha) * c.vol;
    out.bis = c.bis;
  }

  // Pick a cut value for form fs strictly inside the cell's value range:
  // the power of two nearest the geometric mean of the range if that
  // separates the vertices, else the geometric mean itself. Snapping makes
  // neighbouring branches reuse identical cut planes, so the level sets
  // become shared faces of the final mesh. Returns 0 if no value separates
  // the vertices.
  double pick_cut(const Cell& c, int fs) const {
    const int cols = n_ + 1;
    const double* row = &c.vals[static_cast<size_t>(fs) * static_cast<size_t>(cols)];
    double lo = row[0], hi = row[0];
    for (int j = 1; j < cols; ++j) {
      lo = std::min(lo, row[j]);
      hi = std::max(hi, row[j]);
    }
    if (!(lo > 0.0) || !(hi > lo * (1.0 + 1e-9))) return 0.0;
    const auto separates = [&](double cv) {
      int nlo = 0, nhi = 0;
      for (int j = 0; j < cols; ++j) {
        if (row[j] < cv * (1.0 - 1e-9)) ++nlo;
        if (row[j] > cv * (1.0 + 1e-9)) ++nhi;
      }
      return nlo > 0 && nhi > 0;
    };
    const double g = std::sqrt(lo * hi);
    const double snapped = std::exp2(std::round(std::log2(g)));
    if (separates(snapped)) return snapped;
    if (separates(g)) return g;
    return 0.0;
  }

  // Cut the cell by one level set of one form: every edge crossing the cut
  // value is split at that same value, so each child ends up on one side of
  // the level set (vertices may lie on it) and the level set becomes a
  // union of child faces. Each pass removes one strictly crossing vertex
  // pair, so this terminates. Bisecting a single edge instead would cut
  // along a cevian plane through two off-layer vertices; in three
  // dimensions those skew cuts re-shatter the graded layers at every scale.
  void cut_cell(const Cell& c, int fs, double cut, std::vector<Cell>& out) const {
    const int cols = n_ + 1;
    out.clear();
    out.push_back(c);
    out.back().bis = c.bis + 1;
    for (size_t head = 0; head < out.size();) {
      int ci = -1, cj = -1;
      const double* row = &out[head].vals[static_cast<size_t>(fs) * static_cast<size_t>(cols)];
      for (int i = 0; i < cols && ci < 0; ++i) {
        for (int j = i + 1; j < cols; ++j) {
          const bool ilo = row[i] < cut * (1.0 - 1e-9), ihi = row[i] > cut * (1.0 + 1e-9);
          const bool jlo = row[j] < cut * (1.0 - 1e-9), jhi = row[j] > cut * (1.0 + 1e-9);
          if ((ilo && jhi) || (ihi && jlo)) {
            ci = i;
            cj = j;
            break;
          }
        }
      }
      if (ci < 0) {
        ++head;
        continue;
      }
      const double ti = out[head].vals[static_cast<size_t>(fs) * static_cast<size_t>(cols) + static_cast<size_t>(ci)];
      const double tj = out[head].vals[static_cast<size_t>(fs) * static_cast<size_t>(cols) + static_cast<size_t>(cj)];
      const double alpha = (cut - ti) / (tj - ti);
      Cell keep_i, keep_j;
      edge_child(out[head], ci, cj, alpha, cj, fs, cut, keep_i);
      edge_child(out[head], ci, cj, alpha, ci, fs, cut, keep_j);
      out[head] = std::move(keep_i);
      out.push_back(std::move(keep_j));
      if (out.size() > 256) fail(Errc::MaxIterations, "level-set cut did not terminate");
    }
  }

  // Integrands here behave like products of reciprocals of the forms, so a
  // cell is geometrically unresolved while any positive form still spans
  // more than kSweepRatio between its vertices. Such cells are cut along
  // that form's level sets without spending any rule evaluations (the rule
  // pair is erratic on them and its verdict is a foregone conclusion).
  // Unresolved forms are swept smallest minimum first: many forms are
  // positive combinations of a few independent ones, a combination never
  // has a smaller minimum than its smallest constituent, and once the
  // constituents are resolved the combination is resolved for free. This
  // order therefore cuts along the independent layers and never along the
  // diagonal level sets of the combined forms, which would shatter the
  // graded mesh.
  bool sweep_choice(const Cell& c, int* fs, double* cut) const {
    const int cols = n_ + 1;
    int order[kMaxForms];
    double lov[kMaxForms];
    int cand = 0;
    for (int fo = 0; fo < nf_; ++fo) {
      const double* row = &c.vals[static_cast<size_t>(fo) * static_cast<size_t>(cols)];
      double lo = row[0], hi = row[0];
      for (int j = 1; j < cols; ++j) {
        lo = std::min(lo, row[j]);
        hi = std::max(hi, row[j]);
      }
      if (!(lo > 0.0) || hi <= lo * kSweepRatio) continue;
      lov[fo] = lo;
      order[cand++] = fo;
    }
    std::sort(order, order + cand, [&](int a, int b) {
      return lov[a] != lov[b] ? lov[a] < lov[b] : a < b;
    });
    for (int q = 0; q < cand; ++q) {
      const double cv = pick_cut(c, order[q]);
      if (cv > 0.0) {
        *fs = order[q];
        *cut = cv;
        return true;
      }
    }
    return false;
  }

  // Polish split for cells the rule pair rejects even though every form is
  // within kSweepRatio: cut the level set of the form with the largest log
  // range weighted by inverse magnitude (the small forms dominate the
  // integrand), falling back to a midpoint split of the longest weighted
  // edge when no form separates the vertices.
  void split(const Cell& c, std::vector<Cell>& out) const {
    const int cols = n_ + 1;
    double lg[kMaxForms * (kMaxDim + 1)];
    double w[kMaxForms], lov[kMaxForms], hiv[kMaxForms];
    double mmax = -std::numeric_limits<double>::infinity();
    for (int fo = 0; fo < nf_; ++fo) {
      double mean = 0.0, lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (int j = 0; j < cols; ++j) {
        const double t = c.vals[static_cast<size_t>(fo) * static_cast<size_t>(cols) + static_cast<size_t>(j)];
        lo = std::min(lo, t);
        hi = std::max(hi, t);
        const double l = std::log(t > 1e-300 ? t : 1e-300);
        lg[fo * cols + j] = l;
        mean += l;
      }
      lov[fo] = lo;
      hiv[fo] = hi;
      w[fo] = -mean / cols;
      if (w[fo] > mmax) mmax = w[fo];
    }
    for (int fo = 0; fo < nf_; ++fo) w[fo] = std::exp(w[fo] - mmax);
    int fs = -1;
    double best = 0.0;
    for (int fo = 0; fo < nf_; ++fo) {
      if (!(lov[fo] > 0.0) || !(hiv[fo] > lov[fo])) continue;
      const double range = std::log(hiv[fo] / lov[fo]);
      const double sc = w[fo] * range * range;
      if (sc > best) {
        best = sc;
        fs = fo;
      }
    }
    const double cut = fs >= 0 ? pick_cut(c, fs) : 0.0;
    if (cut > 0.0) {
      cut_cell(c, fs, cut, out);
      return;
    }
    int bi = 0, bj = 1;
    double bd = -1.0;
    for (int i = 0; i < cols; ++i) {
      for (int j = i + 1; j < cols; ++j) {
        double d2 = 0.0;
        for (int fo = 0; fo < nf_; ++fo) {
          const double d = lg[fo * cols + i] - lg[fo * cols + j];
          d2 += w[fo] * d * d;
        }
        if (d2 > bd) {
          bd = d2;
          bi = i;
          bj = j;
        }
      }
    }
    out.resize(2);
    edge_child(c, bi, bj, 0.5, bj, -1, 0.0, out[0]);
    edge_child(c, bi, bj, 0.5, bi, -1, 0.0, out[1]);
    out[0].bis = out[1].bis = c.bis + 1;
  }

  // Geometrically unresolved cells are cut without consulting the rule.
  // For the rest, the cell's error is estimated by comparing the rule
  // against the embedded lower-degree rule on the same cell (independent
  // point sets, so the pair does not go blind on self-similar boundary
  // layers). The local tolerance is divided among the children at each
  // split, which keeps the sum over accepted leaves below the root
  // tolerance (Kraft). On top of that, a cell is accepted once the pair
  // agrees to rel_accept of the cell's own contribution: the integrands
  // here have one sign per root, so those errors sum to at most rel_accept
  // times the total mass. Without this floor the geometric boundary layers
  // (density spanning e^{nR} in dynamic range) would be refined to machine
  // precision no matter how loose the requested tolerance. Cells whose
  // disagreement sits at the rounding floor are accepted as unimprovable in
  // double precision.
  void go(const Cell& c, double tol, double* value, double* err, bool* hit_cap) {
    std::vector<Cell> kids;
    int sfs = -1;
    double scut = 0.0;
    if (c.bis < max_bisect_ && sweep_choice(c, &sfs, &scut)) {
      cut_cell(c, sfs, scut, kids);
    } else {
      double absA = 0.0, absB = 0.0;
      const double QA = apply_rule(rule_, c, &absA);
      const double QB = apply_rule(low_, c, &absB);
      const double diff = std::abs(QA - QB);
      const double noise = 8.0 * std::numeric_limits<double>::epsilon() * (absA + absB);
      const double accept = std::max({tol, noise, rel_accept_ * std::abs(QA)});
      if (diff <= accept || c.bis >= max_bisect_) {
        *value = QA;
        *err = diff;
        if (diff > accept) *hit_cap = true;
        if (sink_) sink_->push_back(FrozenLeaf{c.bary, c.vol / root_vol_});
        return;
      }
      split(c, kids);
    }
    const int k = static_cast<int>(kids.size());
    // Child tolerances blend volume share with an even share so slivers from
    // a level-set cut are not starved; the sum stays at tol (Kraft).
    std::vector<double> ctol(k), v(k, 0.0), e(k, 0.0);
    for (int i = 0; i < k; ++i)
      ctol[i] = 0.5 * tol * (kids[i].vol / c.vol + 1.0 / static_cast<double>(k));
    std::vector<char> caps(k, 0);
#ifdef _OPENMP
    if (parallel_ && c.bis < kTaskBisections) {
      for (int i = 0; i + 1 < k; ++i) {
        bool ci = false;
#pragma omp task shared(kids, ctol, v, e, caps) firstprivate(i, ci)
        {
          go(kids[i], ctol[i], &v[i], &e[i], &ci);
          caps[i] = ci;
        }
      }
      {
        bool ci = false;
        go(kids[k - 1], ctol[k - 1], &v[k - 1], &e[k - 1], &ci);
        caps[k - 1] = ci;
      }
#pragma omp taskwait
    } else
#endif
    {
      for (int i = 0; i < k; ++i) {
        bool ci = false;
        go(kids[i], ctol[i], &v[i], &e[i], &ci);
        caps[i] = ci;
      }
    }
    double vs = 0.0, es = 0.0;
    bool cap = false;
    for (int i = 0; i < k; ++i) {
      vs += v[i];
      es += e[i];
      cap = cap || caps[i];
    }
    *value = vs;
    *err = es;
    *hit_cap = cap;
  }

  QuadResult run(const FormSimplex& root, double tol) {
    const int cols = n_ + 1;
    Cell c0;
    c0.vals = root.vals;
    c0.vol = root.volume;
    root_vol_ = root.volume;
    c0.bis = 0;
    if (sink_) {
      c0.bary.assign(static_cast<size_t>(cols) * static_cast<size_t>(cols), 0.0);
      for (int r = 0; r < cols; ++r) c0.bary[static_cast<size_t>(r) * static_cast<size_t>(cols) + static_cast<size_t>(r)] = 1.0;
    }
    QuadResult res;
    bool cap = false;
    go(c0, tol, &res.value, &res.error, &cap);
    res.converged = !cap;
    res.evaluations = evals_.load();
    return res;
  }

 private:
  const GMRule& rule_;
  const GMRule& low_;
  const F& f_;
  int n_, nf_, max_bisect_;
  bool parallel_;
  double rel_accept_;
  std::vector<FrozenLeaf>* sink_;
  double root_vol_ = 1.0;
  std::atomic<long long> evals_{0};
};

}  // namespace detail

// Integrates f over a list of root simplices given in form space. Half the
// tolerance is split evenly across roots as an absolute budget; the other
// half funds the per-cell relative acceptance, whose scale is calibrated
// against a one-rule scan of the roots and then, if that scan was off by
// more than a factor, recalibrated against the computed total and rerun.
// Results are reduced in root order and every refinement decision depends
// only on local cell data and the pass's fixed calibration, so the outcome
// is identical for the serial and the parallel path.
//
// dup_of, when given, maps every root index to the lowest index of a root
// with bitwise-identical integral (a symmetry copy). Only representatives
// are integrated; their value and error are repeated for each copy, so the
// total matches the unreduced sum exactly. Ignored when collect is set:
// frozen partitions are consumed per root, not per class.
template <class F>
QuadResult integrate_form_simplices(int n, int nf, const std::vector<FormSimplex>& roots, const F& f,
                                    double tol, const QuadOptions& opt = {},
                                    FrozenPartition* collect = nullptr,
                                    const std::vector<int>* dup_of = nullptr) {
  if (roots.empty()) fail(Errc::EmptyInput, "no simplices to integrate over");
  const std::vector<int>* dup = collect == nullptr ? dup_of : nullptr;
  if (dup) {
    if (dup->size() != roots.size()) fail(Errc::DegenerateInput, "duplicate map size mismatch");
    for (size_t r = 0; r < roots.size(); ++r) {
      const int d = (*dup)[r];
      if (d < 0 || d > static_cast<int>(r) || (*dup)[static_cast<size_t>(d)] != d)
        fail(Errc::DegenerateInput, "duplicate map must point at earlier representatives");
    }
  }
  const int s = opt.rule_s < 1 ? 1 : opt.rule_s;
  const GMRule rule = grundmann_moeller(n, s);
  const GMRule low = grundmann_moeller(n, s - 1);
  const double tol_each = 0.5 * tol / static_cast<double>(roots.size());
  // Budget enough lineage depth to grade every boundary layer down to the
  // smallest form value present: log2 of the worst per-form dynamic range,
  // per dimension, plus slack. opt.max_halvings acts as a floor, so wide
  // ranges (tau = e^{-R} for large R) do not silently truncate refinement.
  double ratio = 1.0;
  for (const FormSimplex& root : roots) {
    const int cols = n + 1;
    for (int fo = 0; fo < nf; ++fo) {
      double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
      for (int j = 0; j < cols; ++j) {
        const double t = root.vals[static_cast<size_t>(fo) * static_cast<size_t>(cols) + static_cast<size_t>(j)];
        lo = std::min(lo, t);
        hi = std::max(hi, t);
      }
      if (lo > 0.0 && hi / lo > ratio) ratio = hi / lo;
    }
  }
  const int depth_for_range = static_cast<int>(std::ceil(std::log2(ratio))) + 16;
  const int max_bisect = std::max(opt.max_halvings, depth_for_range) * n;
  const bool parallel = opt.parallel && collect == nullptr;

  std::vector<int> mult;
  if (dup) {
    mult.assign(roots.size(), 0);
    for (int d : *dup) ++mult[static_cast<size_t>(d)];
  }

  long long scan_evals = 0;
  double scale = 0.0;
  {
    const int cols = n + 1;
    double t[detail::kMaxForms];
    for (size_t r = 0; r < roots.size(); ++r) {
      if (dup && (*dup)[r] != static_cast<int>(r)) continue;
      const FormSimplex& root = roots[r];
      double acc = 0.0;
      for (int k = 0; k < rule.npts; ++k) {
        const double* b = &rule.bary[static_cast<size_t>(k) * static_cast<size_t>(cols)];
        for (int fo = 0; fo < nf; ++fo) {
          const double* row = &root.vals[static_cast<size_t>(fo) * static_cast<size_t>(cols)];
          double v = 0.0;
          for (int j = 0; j < cols; ++j) v += b[j] * row[j];
          t[fo] = v;
        }
        acc += rule.weight[static_cast<size_t>(k)] * f(t);
      }
      const double copies = dup ? static_cast<double>(mult[r]) : 1.0;
      scale += copies * std::abs(root.volume * acc);
      scan_evals += rule.npts;
    }
  }

  QuadResult total;
  long long spent = scan_evals;
  for (int pass = 0; pass < 3; ++pass) {
    const double eta = 0.5 * tol / std::max(scale, 10.0 * tol);
    if (collect) collect->assign(roots.size(), {});
    std::vector<QuadResult> partial(roots.size());
#ifdef _OPENMP
#pragma omp parallel if (parallel)
#pragma omp single nowait
#endif
    {
      for (size_t r = 0; r < roots.size(); ++r) {
#ifdef _OPENMP
#pragma omp task firstprivate(r) if (parallel)
#endif
        {
          detail::AdaptiveRun<F> run(rule, low, f, n, nf, max_bisect, parallel, eta,
                                     collect ? &(*collect)[r] : nullptr);
          partial[r] = run.run(roots[r], tol_each);
        }
      }
#ifdef _OPENMP
#pragma omp taskwait
#endif
    }

    total = QuadResult{};
    double absmass = 0.0;  // each root has one sign, so this bounds sum |Q_cell|
    for (const auto& p : partial) {
      total.value += p.value;
      total.error += p.error;
      total.evaluations += p.evaluations;
      total.converged = total.converged && p.converged;
      absmass += std::abs(p.value);
    }
    spent += total.evaluations;

    const double mass = std::max(absmass, 10.0 * tol);
    if (eta <= 1.25 * (0.5 * tol / mass)) break;  // scan did not undershoot the mass
    scale = mass;
    if (pass == 2) total.converged = false;
  }
  total.evaluations = spent;
  return total;
}

// Applies the rule on a frozen partition (no adaptivity). With the partition
// taken from a previous adaptive run on nearby roots, the quadrature error is
// a smooth function of the root data, which makes finite differences of the
// result well behaved.
template <class F>
double evaluate_frozen(int n, int nf, const std::vector<FormSimplex>& roots, const F& f,
                       const FrozenPartition& part, const QuadOptions& opt = {}) {
  const GMRule rule = grundmann_moeller(n, opt.rule_s < 1 ? 1 : opt.rule_s);
  const int cols = n + 1;
  double total = 0.0;
  std::vector<double> vals(static_cast<size_t>(nf) * static_cast<size_t>(cols));
  for (size_t r = 0; r < roots.size(); ++r) {
    const FormSimplex& root = roots[r];
    double sub = 0.0;
    for (const FrozenLeaf& leaf : part[r]) {
      for (int fo = 0; fo < nf; ++fo) {
        const double* row = &root.vals[static_cast<size_t>(fo) * static_cast<size_t>(cols)];
        for (int j = 0; j < cols; ++j) {
          double v = 0.0;
          for (int i = 0; i < cols; ++i)
            v += leaf.bary[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)] * row[i];
          vals[static_cast<size_t>(fo) * static_cast<size_t>(cols) + static_cast<size_t>(j)] = v;
        }
      }
      double t[detail::kMaxForms];
      double acc = 0.0;
      for (int k = 0; k < rule.npts; ++k) {
        const double* b = &rule.bary[static_cast<size_t>(k) * static_cast<size_t>(cols)];
        for (int fo = 0; fo < nf; ++fo) {
          const double* row = &vals[static_cast<size_t>(fo) * static_cast<size_t>(cols)];
          double v = 0.0;
          for (int j = 0; j < cols; ++j) v += b[j] * row[j];
          t[fo] = v;
        }
        acc += rule.weight[static_cast<size_t>(k)] * f(t);
      }
      sub += leaf.volfrac * root.volume * acc;
    }
    total += sub;
  }
  return total;
}

}  // namespace funkvol
