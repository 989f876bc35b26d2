#include "sit/system_waves.hpp"

#include <algorithm>
#include <cmath>

#include "sit/errors.hpp"
#include "sit/quadrature.hpp"

namespace sit {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw ConfigError(msg);
}

// Integrating-factor exponent of the E line against F* e^{-lambda z}:
// delta(z) = -(beta F*/(lambda c K)) e^{-lambda z} + ((nuE+muE)/c) z
//            + beta F*/(lambda c K),  delta(0) = 0, decreasing for c < 0.
struct DeltaExp {
  double amp = 0.0;    // -beta F*/(lambda c K) (positive for c < 0)
  double slope = 0.0;  // (nuE+muE)/c (negative)
  double lambda = 0.0;

  double operator()(double z) const {
    return amp * std::exp(-lambda * z) + slope * z - amp;
  }
};

}  // namespace

double SystemSuperSolution::tilde_E(double z) const {
  if (z <= 0.0) return eq.E_star;
  const DeltaExp delta{-params.beta * eq.F_star / (lambda * c * params.K),
                       (params.nu_E + params.mu_E) / c, lambda};
  const double dz = delta(z);
  // tildeE = -(beta F*/c) Integral_0^z e^{delta(z)-delta(s)-lambda s} ds
  //          + E* e^{delta(z)}; both terms positive, integrand in (0, 1].
  const auto integrand = [&](double s) {
    return std::exp(dz - delta(s) - lambda * s);
  };
  // The integrand rises toward s = z with an O(1 km) scale; everything more
  // than ~200 km left of z is exponentially negligible but costs one panel.
  const double split = std::max(0.0, z - 200.0);
  double integral = gauss_legendre(integrand, split, z, 256);
  if (split > 0.0) integral += gauss_legendre(integrand, 0.0, split, 256);
  return -(params.beta * eq.F_star / c) * integral +
         eq.E_star * std::exp(dz);
}

double SystemSuperSolution::tilde_M(double z) const {
  // C_M e^{-lambda z} + (M* - C_M) e^{q_minus z}, evaluated via expm1 since
  // C_M dwarfs M* and the naive difference would cancel catastrophically.
  const double grow = std::expm1((-lambda - q_minus) * z);
  return std::exp(q_minus * z) * (C_M * grow + eq.M_star);
}

double SystemSuperSolution::phi_E(double z) const {
  return z <= x_E ? eq.E_star : tilde_E(z);
}

double SystemSuperSolution::phi_F(double z) const {
  return z <= 0.0 ? eq.F_star : eq.F_star * std::exp(-lambda * z);
}

double SystemSuperSolution::phi_M(double z) const {
  return z <= x_M ? eq.M_star : tilde_M(z);
}

double SystemSuperSolution::control(double z) const {
  return z > 0.0 ? C_s_min * std::exp(-eta * z) : 0.0;
}

SystemSuperSolution system_super(const ModelParams& p, double c) {
  p.validate();
  require(c < 0.0, "system_super: requires a leftward frame speed c < 0");

  SystemSuperSolution s;
  s.c = c;
  s.params = p;
  s.eq = equilibrium(p);

  const double D = p.D;
  const double nu_mu = p.nu_E + p.mu_E;
  // Decay-rate ceilings keeping each line's far-field inequality one-signed:
  //   E line (first order):       lambda <  -(nuE+muE)/c
  //   M line (full diffusion):    lambda <  (c + sqrt(c^2+4 D muM))/(2D)
  //   F line at half mating load: lambda <  (c + sqrt(c^2+2 D muF))/(2D)
  const double bound_E = -nu_mu / c;
  const double bound_M = (c + std::sqrt(c * c + 4.0 * D * p.mu_M)) / (2.0 * D);
  const double bound_F = (c + std::sqrt(c * c + 2.0 * D * p.mu_F)) / (2.0 * D);
  s.lambda = 0.9 * std::min({bound_E, bound_M, bound_F});
  s.eta = 0.9 * s.lambda;
  s.q_minus = (-c - std::sqrt(c * c + 4.0 * D * p.mu_M)) / (2.0 * D);

  // Envelope constant of the E line: tildeE <= C_E e^{-lambda z} with
  // C_E = E* + (beta F*/c) e^{-beta F*/(c lambda K)} / (lambda + (nuE+muE)/c).
  // The F-line ceiling above presumes the mating load alpha C_E/E* = 1/2,
  // which the alpha chosen below restores, closing the fixed point.
  const double a_if = p.beta * s.eq.F_star / (c * s.lambda * p.K);
  s.C_E = s.eq.E_star + (p.beta * s.eq.F_star / c) * std::exp(-a_if) /
                            (s.lambda + nu_mu / c);
  if (!(std::isfinite(s.C_E) && s.C_E > 0.0))
    throw NumericalError("system_super: E envelope constant not finite");
  s.alpha = 0.5 * s.eq.E_star / s.C_E;

  const double denom_M = -D * s.lambda * s.lambda + c * s.lambda + p.mu_M;
  s.C_M = (1.0 - p.r) * p.nu_E * s.C_E / denom_M;
  s.C_s_min = 1.1 * s.C_M * (1.0 / p.gamma) * (1.0 / s.alpha - 1.0);
  if (!(std::isfinite(s.C_s_min) && s.C_s_min > 0.0))
    throw NumericalError("system_super: control amplitude not finite");

  // Last crossing of tildeM with M*: near ln(C_M/M*)/lambda, where the
  // homogeneous piece is long dead. The excess at that point itself is
  // rounding noise (the two terms cancel to ~1e-13 relative), so bracket a
  // unit to either side, where the exponential tilt dominates the noise.
  const double x0 = std::log(s.C_M / s.eq.M_star) / s.lambda;
  double lo = x0 - 1.0, hi = x0 + 1.0;
  const auto excess = [&](double z) { return s.tilde_M(z) - s.eq.M_star; };
  if (!(excess(lo) > 0.0 && excess(hi) < 0.0))
    throw NumericalError("system_super: M crossing bracket failed");
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  s.x_M = 0.5 * (lo + hi);

  // The E profile leaves E* immediately (flat tangency at 0, then strictly
  // below); confirm on a stretched sample so the stored x_E = 0 is honest.
  s.x_E = 0.0;
  for (int i = 1; i <= 400; ++i) {
    const double z = 60.0 * std::pow(double(i) / 400.0, 3);
    if (s.tilde_E(z) >= s.eq.E_star)
      throw NumericalError("system_super: E profile re-touches E*");
  }
  return s;
}

double SystemSubSolution::phi_E(double z) const {
  if (z > 0.0) return 0.0;
  return eq.E_star + b1 * std::exp(lambda_F_plus * z);
}

double SystemSubSolution::phi_F(double z) const {
  if (z > y_F) return 0.0;
  return eq.F_star + b2 * std::exp(lambda_F_plus * z);
}

double SystemSubSolution::phi_M(double z) const {
  if (z > 0.0) return 0.0;
  const double eF = std::exp(lambda_F_plus * z);
  if (degenerate) return eq.M_star + (a * z + b3) * eF;
  return eq.M_star + a * std::exp(lambda_M_plus * z) + b3 * eF;
}

SystemSubSolution system_sub(const ModelParams& p, double c) {
  p.validate();
  require(c < 0.0, "system_sub: requires a leftward frame speed c < 0");

  SystemSubSolution s;
  s.c = c;
  s.params = p;
  s.eq = equilibrium(p);

  const double D = p.D;
  const double nu_mu = p.nu_E + p.mu_E;
  // Positive roots of the decaying-mode polynomials behind the front:
  //   P_F(l) = -l^2 + ((nuE+muE)/c - c/D) l + (nuE+muE+muF)/D
  //   P_M(l) =  l^2 + (c/D) l - muM/D
  const double BF = nu_mu / c - c / D;
  const double CF = (nu_mu + p.mu_F) / D;
  s.lambda_F_plus = 0.5 * (BF + std::sqrt(BF * BF + 4.0 * CF));
  const double BM = -c / D;
  const double CM = p.mu_M / D;
  s.lambda_M_plus = 0.5 * (BM + std::sqrt(BM * BM + 4.0 * CM));

  const double lF = s.lambda_F_plus;
  s.b1 = -s.eq.E_star;
  s.b2 = s.b1 * (s.eq.F_star / s.eq.E_star) * (1.0 - c * lF / nu_mu);
  s.b4 = lF * s.b2;

  s.degenerate = std::abs(s.lambda_F_plus - s.lambda_M_plus) < 1e-9;
  if (s.degenerate) {
    // Resonant forcing of the M line: generalized mode a z e^{lF z}.
    s.b3 = -s.eq.M_star;
    s.a = s.eq.M_star / (1.0 + 2.0 * D * lF / p.mu_M);
    s.b5 = lF * s.b3 + s.a;
  } else {
    const double denom_M = -D * (lF * lF + (c / D) * lF - p.mu_M / D);
    s.b3 = s.b1 * (s.eq.M_star / s.eq.E_star) * p.mu_M / denom_M;
    s.a = -s.eq.M_star - s.b3;
    s.b5 = lF * s.b3;
  }

  // Front edge of the female bump: unique sign change of F* + b2 e^{lF z}.
  if (!(s.b2 < -s.eq.F_star))
    throw NumericalError("system_sub: female mode does not cross zero");
  double lo = -40.0, hi = 0.0;
  const auto fhat = [&](double z) {
    return s.eq.F_star + s.b2 * std::exp(lF * z);
  };
  if (!(fhat(lo) > 0.0))
    throw NumericalError("system_sub: female bracket failed");
  for (int it = 0; it < 200 && hi - lo > 1e-14 * 40.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    (fhat(mid) > 0.0 ? lo : hi) = mid;
  }
  s.y_F = 0.5 * (lo + hi);

  for (int i = 1; i <= 6000; ++i) {
    const double z = -60.0 * double(i) / 6000.0;
    if (!(s.phi_M(z) > 0.0))
      throw NumericalError("system_sub: male component loses positivity");
  }
  return s;
}

}  // namespace sit
