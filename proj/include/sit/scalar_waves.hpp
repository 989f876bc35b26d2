// Traveling-wave barrier construction for the scalar model in the moving
// frame z = x - ct, c <= 0:
//
//   -c w' - w'' = w/(w + phi(z)) * beta w / (beta w / K + delta) - mu w
//
// Upper barrier ("blocking profile"): w_bar = u* min(1, exp(r(alpha) z))
// with r(alpha) the negative root of r^2 + c r + (alpha beta/delta - mu) = 0,
// valid whenever the control keeps the mating factor below alpha on z > 0:
// any eta in [0, -r(alpha)] and A >= u*/alpha - u*.
//
// Lower barrier: the release-free stationary bump w with w(0) = 0,
// w'(0) = -sqrt(2 \int_0^{u*} f), extended by u* as z -> -infinity and by 0
// on z > 0; it is independent of c (the -c w' term has the favorable sign).
#pragma once

#include <vector>

#include "sit/params.hpp"

namespace sit {

struct ScalarSuperSolution {
  double c = 0.0;
  double alpha = 0.0;    // mating-factor ceiling ensured by the control
  double r_alpha = 0.0;  // negative decay root
  double A_min = 0.0;    // minimal control amplitude u*/alpha - u*
  double eta_max = 0.0;  // maximal admissible control decay rate, -r_alpha
  double u_star = 0.0;
  ScalarParams params;

  double value(double z) const;  // u* for z <= 0, u* exp(r_alpha z) for z > 0
};

// Requires c < 0 and 0 < alpha < delta mu / beta (so the controlled growth
// rate alpha beta / delta - mu is negative and r(alpha) is real negative).
ScalarSuperSolution scalar_super(const ScalarParams& p, double c,
                                 double alpha);

struct ScalarSubSolution {
  double u_star = 0.0;
  double slope_at_zero = 0.0;  // w'(0) < 0
  double kappa = 0.0;          // sqrt(|f'(u*)|), the approach rate to u*
  double x_left = 0.0;         // tabulation end, w(x_left) ~ u*(1 - e^-14)
  double h = 0.0;              // tabulation step
  ScalarParams params;

  // Tabulated (w, w') on [x_left, 0] at spacing h, cubic Hermite in between;
  // exactly 0 for z > 0, saddle-linearized tail toward u* for z < x_left.
  std::vector<double> w, wp;

  double value(double z) const;
  double derivative(double z) const;

  // integral_0^{w} f(s) ds on the tabulation, for energy diagnostics.
  double total_energy() const { return energy_total; }
  double energy_total = 0.0;  // \int_0^{u*} f
};

// Integrates w'' = -f(w) leftward from (w, w') = (0, -sqrt(2 \int_0^{u*} f))
// by RK4 with step h = 2.5e-4 until x = -14/kappa. The traverse shadows the
// connecting orbit into the saddle at (u*, 0); monotonicity of w is checked
// along the way.
ScalarSubSolution scalar_sub(const ScalarParams& p);

}  // namespace sit
