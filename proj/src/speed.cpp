#include "sit/speed.hpp"

#include <cmath>

#include "sit/errors.hpp"

namespace sit {

double gamma1(double mu, const ModelParams& p) {
  const double a = p.D * mu * mu;
  const double s = p.nu_E + p.mu_E;
  const double disc =
      std::sqrt((a + s - p.mu_F) * (a + s - p.mu_F) + 4.0 * p.beta * p.r * p.nu_E);
  return 0.5 * (a - s - p.mu_F + disc);
}

double speed_condition_value(double mu, const ModelParams& p) {
  const double a = p.D * mu * mu;
  const double s = p.nu_E + p.mu_E;
  const double disc =
      std::sqrt((a + s - p.mu_F) * (a + s - p.mu_F) + 4.0 * p.beta * p.r * p.nu_E);
  return 2.0 * p.mu_M - a - s - p.mu_F + disc;
}

SpeedResult minimal_speed(const ModelParams& p) {
  p.validate();
  if (offspring_number(p) <= 1.0)
    throw ConfigError(
        "minimal speed undefined: offspring number R <= 1, the population "
        "cannot invade");
  const auto objective = [&p](double mu) { return gamma1(mu, p) / mu; };

  // Geometric scan for a bracket [lo, hi] with an interior point below both
  // ends. gamma1/mu diverges at 0+ and grows ~ D mu at infinity, so the
  // scan always terminates.
  double lo = 1e-3, mid = 2e-3, hi = 4e-3;
  double f_lo = objective(lo), f_mid = objective(mid), f_hi = objective(hi);
  while (!(f_mid <= f_lo && f_mid <= f_hi)) {
    lo = mid;
    f_lo = f_mid;
    mid = hi;
    f_mid = f_hi;
    hi *= 2.0;
    if (hi > 1e6) throw NumericalError("minimal_speed bracketing failed");
    f_hi = objective(hi);
  }

  // Golden-section to interval width 1e-10.
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
  double f1 = objective(c1), f2 = objective(c2);
  while (b - a > 1e-10) {
    if (f1 < f2) {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - gr * (b - a);
      f1 = objective(c1);
    } else {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + gr * (b - a);
      f2 = objective(c2);
    }
  }
  SpeedResult res;
  res.mu_bar = 0.5 * (a + b);
  res.c_bar = objective(res.mu_bar);
  res.gamma1_at_mu_bar = gamma1(res.mu_bar, p);
  res.condition_ok = speed_condition_value(res.mu_bar, p) > 0.0;
  return res;
}

double kpp_speed(const ScalarParams& p) {
  p.validate();
  return 2.0 * std::sqrt(p.beta / p.delta - p.mu);
}

}  // namespace sit
