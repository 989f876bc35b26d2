#include "sit/scalar_waves.hpp"

#include <cmath>

#include "sit/errors.hpp"
#include "sit/quadrature.hpp"

namespace sit {

double ScalarSuperSolution::value(double z) const {
  return z <= 0.0 ? u_star : u_star * std::exp(r_alpha * z);
}

ScalarSuperSolution scalar_super(const ScalarParams& p, double c,
                                 double alpha) {
  p.validate();
  if (!(c < 0)) throw ConfigError("scalar_super needs c < 0");
  const double controlled_rate = alpha * p.beta / p.delta - p.mu;
  if (!(alpha > 0) || !(controlled_rate < 0))
    throw ConfigError(
        "scalar_super needs 0 < alpha < delta*mu/beta so the controlled "
        "per-capita growth is negative");
  ScalarSuperSolution s;
  s.c = c;
  s.alpha = alpha;
  s.params = p;
  s.u_star = scalar_equilibrium(p);
  // Negative root of r^2 + c r + controlled_rate = 0; real because
  // controlled_rate < 0.
  s.r_alpha = 0.5 * (-c - std::sqrt(c * c - 4.0 * controlled_rate));
  s.eta_max = -s.r_alpha;
  s.A_min = s.u_star / alpha - s.u_star;
  return s;
}

double ScalarSubSolution::value(double z) const {
  if (z >= 0.0) return 0.0;
  // Left of the table, continue with the saddle linearization
  // u* - (u* - w(x_left)) e^{kappa (z - x_left)}; value-continuous, and
  // slope-continuous to O((u* - w)^2) by the energy identity.
  if (z <= x_left)
    return u_star - (u_star - w.front()) * std::exp(kappa * (z - x_left));
  // Hermite interpolation on the uniform table. Index from the left end.
  const double s = (z - x_left) / h;
  int i = static_cast<int>(std::floor(s));
  const int n = static_cast<int>(w.size());
  if (i >= n - 1) i = n - 2;
  const double u = s - i;
  const double w0 = w[i], w1 = w[i + 1], d0 = wp[i] * h, d1 = wp[i + 1] * h;
  const double u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * w0 + (u3 - 2 * u2 + u) * d0 +
         (-2 * u3 + 3 * u2) * w1 + (u3 - u2) * d1;
}

double ScalarSubSolution::derivative(double z) const {
  if (z >= 0.0) return 0.0;
  if (z <= x_left)
    return -kappa * (u_star - w.front()) * std::exp(kappa * (z - x_left));
  const double s = (z - x_left) / h;
  int i = static_cast<int>(std::floor(s));
  const int n = static_cast<int>(w.size());
  if (i >= n - 1) i = n - 2;
  const double u = s - i;
  const double w0 = w[i], w1 = w[i + 1], d0 = wp[i] * h, d1 = wp[i + 1] * h;
  const double u2 = u * u;
  return ((6 * u2 - 6 * u) * w0 + (3 * u2 - 4 * u + 1) * d0 +
          (-6 * u2 + 6 * u) * w1 + (3 * u2 - 2 * u) * d1) /
         h;
}

ScalarSubSolution scalar_sub(const ScalarParams& p) {
  p.validate();
  ScalarSubSolution s;
  s.params = p;
  s.u_star = scalar_equilibrium(p);
  const auto f = [&p](double u) { return scalar_reaction(u, 0.0, p); };

  // First integral: w'^2/2 + \int_0^w f = const along w'' = -f(w), so the
  // connecting orbit into (u*, 0) leaves w = 0 with slope -sqrt(2 \int f).
  s.energy_total = adaptive_simpson(f, 0.0, s.u_star, 1e-10);
  s.slope_at_zero = -std::sqrt(2.0 * s.energy_total);

  // Approach rate to the saddle: f'(u*) = beta delta / (beta u*/K + delta)^2
  // - mu = mu^2 delta / beta - mu < 0 (the saturation denominator equals
  // beta/mu at u*). Sets how far the table must extend for w(x_left) to sit
  // within u* e^-14 of the plateau.
  const double fp_star = p.mu * p.mu * p.delta / p.beta - p.mu;  // < 0
  s.kappa = std::sqrt(-fp_star);
  s.h = 2.5e-4;
  const double X = 14.0 / s.kappa;
  const int n_steps = static_cast<int>(std::ceil(X / s.h));
  s.x_left = -n_steps * s.h;

  // RK4 leftward; state y = (w, w'), dy/dx = (w', -f(w)), step -h.
  s.w.assign(n_steps + 1, 0.0);
  s.wp.assign(n_steps + 1, 0.0);
  double w = 0.0, v = s.slope_at_zero;
  s.w[n_steps] = w;
  s.wp[n_steps] = v;
  const double hh = -s.h;
  for (int k = n_steps - 1; k >= 0; --k) {
    const double k1w = v, k1v = -f(w);
    const double k2w = v + 0.5 * hh * k1v, k2v = -f(w + 0.5 * hh * k1w);
    const double k3w = v + 0.5 * hh * k2v, k3v = -f(w + 0.5 * hh * k2w);
    const double k4w = v + hh * k3v, k4v = -f(w + hh * k3w);
    w += hh / 6.0 * (k1w + 2 * k2w + 2 * k3w + k4w);
    v += hh / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    if (!(w > s.w[k + 1]) || !(v < 0.0) || w > s.u_star)
      throw NumericalError(
          "scalar_sub integration left the monotone window; the connecting "
          "orbit was lost");
    s.w[k] = w;
    s.wp[k] = v;
  }
  return s;
}

}  // namespace sit
