// Traveling barrier profiles for the four-component system in the frame
// z = x - ct, c < 0.
//
// Upper barrier (decaying envelope ahead of the sweep): with lambda below
// three explicit decay bounds,
//   phiF = F* min(1, e^{-lambda z})
//   phiE = min(E*, tildeE) where tildeE solves the E-line exactly against
//          F* e^{-lambda z}, written with the integrating factor
//          delta(z) = -(beta F*/(lambda c K)) e^{-lambda z}
//                     + ((nu_E+mu_E)/c) z + beta F*/(lambda c K)
//   phiM = min(M*, tildeM),
//          tildeM = C_M e^{-lambda z} + (M* - C_M) e^{q_minus z}
// and the control box: eta = 0.9 lambda, C_s = 1.1 C_M (1/gamma)(1/alpha-1),
// with alpha pinned by the closure alpha C_E / E* = 1/2 (which makes the
// third lambda bound independent of the constants' size, so one pass after
// the provisional one reaches the fixed point).
//
// Lower barrier (release-free bump behind the front): decaying modes of the
// frozen-coefficient linearization about the equilibrium,
//   Ehat = E* + b1 e^{lambdaF z}            cut to 0 on z > 0
//   Fhat = F* + b2 e^{lambdaF z}            cut to 0 on z > y_F < 0
//   Mhat = M* + a e^{lambdaM z} + b3 e^{lambdaF z}   cut to 0 on z > 0
// with lambdaF, lambdaM the positive roots of
//   P_F(l) = -l^2 + ((nu_E+mu_E)/c - c/D) l + (nu_E+mu_E+mu_F)/D
//   P_M(l) = l^2 + (c/D) l - mu_M/D
// and a generalized-mode variant when the roots collide.
#pragma once

#include "sit/params.hpp"

namespace sit {

struct SystemSuperSolution {
  double c = 0.0;
  double lambda = 0.0;
  double alpha = 0.0;
  double C_E = 0.0;
  double C_M = 0.0;
  double C_s_min = 0.0;  // control amplitude of the admissible box
  double eta = 0.0;      // control decay rate, 0.9 lambda
  double x_E = 0.0;      // last point where tildeE touches E* (= 0)
  double x_M = 0.0;      // last crossing tildeM = M*
  double q_minus = 0.0;  // negative homogeneous decay rate of the M line
  Equilibrium eq;
  ModelParams params;

  double phi_E(double z) const;
  double phi_F(double z) const;
  double phi_M(double z) const;
  // Sterile control the barrier is paired with: C_s e^{-eta z} on z > 0.
  double control(double z) const;

  double tilde_E(double z) const;  // exact E-line solution, any z >= 0
  double tilde_M(double z) const;
};

// Builds the upper barrier at speed c < 0. Throws ConfigError when c >= 0
// or the population cannot invade (R <= 1, no barrier needed).
SystemSuperSolution system_super(const ModelParams& p, double c);

struct SystemSubSolution {
  double c = 0.0;
  double lambda_F_plus = 0.0;
  double lambda_M_plus = 0.0;
  double b1 = 0, b2 = 0, b3 = 0, b4 = 0, b5 = 0, a = 0;
  double y_F = 0.0;  // unique root of F* + b2 e^{lambdaF z}
  bool degenerate = false;  // generalized-mode branch (roots within 1e-9)
  Equilibrium eq;
  ModelParams params;

  double phi_E(double z) const;  // E* + b1 e^{lambdaF z}, 0 on z > 0
  double phi_F(double z) const;  // F* + b2 e^{lambdaF z}, 0 on z > y_F
  double phi_M(double z) const;  // M-line combination, 0 on z > 0
};

// Builds the lower barrier at speed c < 0; positivity of the M component on
// z < 0 is checked on a dense grid. Throws ConfigError for c >= 0 or R <= 1.
SystemSubSolution system_sub(const ModelParams& p, double c);

}  // namespace sit
