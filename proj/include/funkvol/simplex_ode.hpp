#pragma once

namespace funkvol {

// omega_n * volht of the radius-R Funk ball of an n-simplex centered at its
// barycenter (independent of the simplex by collineation invariance).
// Computed by integrating the dimension recursion
//   V_n'(R) = (n+1)/n * 1/(1 - e^-R/(n+1)) * V_{n-1}(R + log(1 + 1/n - e^-R/n))
// with V_1(R) = 2 log(2 e^R - 1) in closed form.  tol is an absolute target
// for the integration error.
double simplex_volume_ode(int n, double R, double tol = 1e-9);

// Same value in Holmes-Thompson units, matching ball_volume output.
double simplex_ht_volume(int n, double R, double tol = 1e-9);

}  // namespace funkvol
