// Times the adaptive ball-volume quadrature with the OpenMP task kernel
// against the serial reference path and checks that both reductions return
// bitwise identical values.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "funkvol/funk.hpp"
#include "funkvol/polytope.hpp"

using namespace funkvol;

namespace {

std::vector<Vec> cube(int n) {
  std::vector<Vec> out;
  for (int m = 0; m < (1 << n); ++m) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = (m >> i) & 1 ? 1.0 : -1.0;
    out.push_back(v);
  }
  return out;
}

std::vector<Vec> cross(int n) {
  std::vector<Vec> out;
  for (int i = 0; i < n; ++i)
    for (double s : {-1.0, 1.0}) {
      Vec v = Vec::Zero(n);
      v(i) = s;
      out.push_back(v);
    }
  return out;
}

struct Case {
  std::string name;
  Polytope body;
  double R;
  double tol;
};

double time_once(const Polytope& P, double R, double tol, bool parallel, VolumeEstimate& est) {
  QuadOptions opt;
  opt.parallel = parallel;
  auto t0 = std::chrono::steady_clock::now();
  est = ball_volume(P, Vec::Zero(P.dim()), R, tol, opt);
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int reps = 3;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--reps") == 0 && i + 1 < argc) reps = std::atoi(argv[++i]);
  }
  if (reps < 1) reps = 1;

  int threads = 1;
#ifdef _OPENMP
  if (const char* s = std::getenv("FUNKVOL_THREADS")) {
    int k = std::atoi(s);
    if (k > 0) omp_set_num_threads(k);
  }
#pragma omp parallel
#pragma omp single
  threads = omp_get_num_threads();
#endif

  std::vector<Case> cases;
  cases.push_back({"square      R=8", build_polytope(cube(2)), 8.0, 1e-7});
  cases.push_back({"hexagon     R=8", build_polytope({Vec{{1.0, 0.0}}, Vec{{0.5, 0.9}},
                                                      Vec{{-0.5, 0.9}}, Vec{{-1.0, 0.0}},
                                                      Vec{{-0.5, -0.9}}, Vec{{0.5, -0.9}}}),
                   8.0, 1e-7});
  cases.push_back({"cube        R=3", build_polytope(cube(3)), 3.0, 1e-5});
  cases.push_back({"octahedron  R=3", build_polytope(cross(3)), 3.0, 1e-5});

  std::printf("ball volume quadrature, serial reference vs OpenMP tasks (%d threads, best of %d)\n",
              threads, reps);
  std::printf("%-18s %12s %12s %9s %7s  %s\n", "body", "serial(s)", "parallel(s)", "speedup",
              "match", "value");
  for (const Case& c : cases) {
    VolumeEstimate es, ep;
    double ts = 1e100, tp = 1e100;
    for (int r = 0; r < reps; ++r) ts = std::min(ts, time_once(c.body, c.R, c.tol, false, es));
    for (int r = 0; r < reps; ++r) tp = std::min(tp, time_once(c.body, c.R, c.tol, true, ep));
    bool match = es.value == ep.value && es.evaluations == ep.evaluations;
    std::printf("%-18s %12.4f %12.4f %9.2f %7s  %.12g\n", c.name.c_str(), ts, tp, ts / tp,
                match ? "yes" : "NO", es.value);
    if (!match) return 1;
  }
  return 0;
}
