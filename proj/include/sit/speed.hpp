// Linearized invasion speed of the wild population.
//
// Linearizing the mobile subsystem about extinction and inserting the
// ansatz exp(mu (x - t gamma/mu)) yields a principal growth exponent
// gamma1(mu); the minimal front speed is c_bar = inf_{mu>0} gamma1(mu)/mu.
#pragma once

#include "sit/params.hpp"

namespace sit {

struct SpeedResult {
  double c_bar = 0.0;             // minimal invasion speed, km/day
  double mu_bar = 0.0;            // minimizing spatial decay rate, 1/km
  double gamma1_at_mu_bar = 0.0;  // growth exponent at the minimizer
  bool condition_ok = false;      // sign of the auxiliary male-decay margin
};

// Principal eigenvalue of the linearization at decay rate mu > 0:
// gamma1 = [D mu^2 - nu_E - mu_E - mu_F
//           + sqrt((D mu^2 + nu_E + mu_E - mu_F)^2 + 4 beta r nu_E)] / 2.
double gamma1(double mu, const ModelParams& p);

// Margin whose positivity guarantees that the male component decays no
// slower than the principal mode at the minimizer:
// 2 mu_M - D mu^2 - nu_E - mu_E - mu_F + sqrt(...).
double speed_condition_value(double mu, const ModelParams& p);

// Golden-section minimization of gamma1(mu)/mu after a geometric bracketing
// scan; interval tolerance 1e-10 on mu. Throws ConfigError when R <= 1
// (the extinction state is stable and no invasion front exists).
SpeedResult minimal_speed(const ModelParams& p);

// KPP speed of the scalar model: 2 sqrt(beta/delta - mu).
double kpp_speed(const ScalarParams& p);

}  // namespace sit
