#include "funkvol/simplex_ode.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include <boost/numeric/odeint/stepper/controlled_runge_kutta.hpp>
#include <boost/numeric/odeint/stepper/generation.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>

#include "funkvol/errors.hpp"
#include "funkvol/types.hpp"

namespace funkvol {

namespace {

double v1(double r) { return 2.0 * (r + std::log(2.0 - std::exp(-r))); }

// log(1 + 1/d - e^-r/d), the radius shift feeding dimension d-1.
double shift(int d, double r) { return r + std::log1p((1.0 - std::exp(-r)) / d); }

// Sampled solution for one dimension; cubic Hermite between nodes, with the
// exact derivative stored at each node.
struct DimTable {
  std::vector<double> r, v, dv;

  double eval(double x) const {
    if (x <= r.front()) return v.front();
    if (x >= r.back()) return v.back();
    size_t hi = std::upper_bound(r.begin(), r.end(), x) - r.begin();
    size_t lo = hi - 1;
    double h = r[hi] - r[lo];
    double t = (x - r[lo]) / h;
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * v[lo] + (t3 - 2 * t2 + t) * h * dv[lo] +
           (-2 * t3 + 3 * t2) * v[hi] + (t3 - t2) * h * dv[hi];
  }
};

// Integrates V_d' from 0 to rmax. lower evaluates V_{d-1}; collect, when
// set, receives every accepted node. Returns V_d(rmax).
double integrate_dim(int d, double rmax, double tol,
                     const std::function<double(double)>& lower, DimTable* collect) {
  namespace ode = boost::numeric::odeint;
  auto rhs_value = [&](double r) {
    return (d + 1.0) / d / (1.0 - std::exp(-r) / (d + 1.0)) * lower(shift(d, r));
  };
  auto sys = [&](const double& /*v*/, double& dvdr, double r) { dvdr = rhs_value(r); };

  // Node spacing bounds the cubic interpolation error of the table,
  // so it scales with the fourth root of the requested tolerance.
  double h_max = std::clamp(0.01 * std::pow(tol * 1e9, 0.25), 2e-3, 0.05);
  auto stepper = ode::make_controlled(tol / 10.0, tol / 10.0, ode::runge_kutta_dopri5<double>());

  double r = 0.0, v = 0.0, dt = h_max;
  if (collect) {
    collect->r.push_back(0.0);
    collect->v.push_back(0.0);
    collect->dv.push_back(rhs_value(0.0));
  }
  while (r < rmax) {
    dt = std::min({dt, h_max, rmax - r});
    int tries = 0;
    while (stepper.try_step(sys, v, r, dt) == ode::fail) {
      if (++tries > 60 || dt < 1e-14) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "step control stalled at R=%.6g in dimension %d", r, d);
        fail(Errc::ToleranceNotReached, buf);
      }
    }
    if (collect) {
      collect->r.push_back(r);
      collect->v.push_back(v);
      collect->dv.push_back(rhs_value(r));
    }
  }
  return v;
}

}  // namespace

double simplex_volume_ode(int n, double R, double tol) {
  if (n < 1) fail(Errc::DegenerateInput, "dimension must be at least 1");
  if (R <= 0) fail(Errc::NonpositiveRadius, "ball radius must be positive");
  if (tol <= 0) fail(Errc::DegenerateInput, "tolerance must be positive");
  if (n == 1) return v1(R);

  // Dimension d feeds dimension d+1 at shifted radii, so the table for d
  // must extend to the image of the radius range above it.
  std::vector<double> rmax(n + 1);
  rmax[n] = R;
  for (int d = n - 1; d >= 2; --d) rmax[d] = shift(d + 1, rmax[d + 1]);

  std::vector<DimTable> table(n);  // table[d] holds dimension d, for 2 <= d <= n-1
  std::function<double(double)> lower = v1;
  for (int d = 2; d < n; ++d) {
    integrate_dim(d, rmax[d], tol, lower, &table[d]);
    lower = [&table, d](double x) { return table[d].eval(x); };
  }
  return integrate_dim(n, R, tol, lower, nullptr);
}

double simplex_ht_volume(int n, double R, double tol) {
  return simplex_volume_ode(n, R, tol) / unit_ball_volume(n);
}

}  // namespace funkvol
