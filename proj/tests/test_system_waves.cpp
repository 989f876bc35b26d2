// Four-component traveling barriers: decay-rate selection, tail constants,
// crossover points, and boundary behavior of both profiles.
#include <doctest.h>

#include <cmath>

#include "sit/errors.hpp"
#include "sit/params.hpp"
#include "sit/system_waves.hpp"

using namespace sit;

namespace {
const ModelParams kDefault;

double lambda_bound_E(const ModelParams& p, double c) {
  return -(p.nu_E + p.mu_E) / c;
}
double lambda_bound_M(const ModelParams& p, double c) {
  return (c + std::sqrt(c * c + 4.0 * p.D * p.mu_M)) / (2.0 * p.D);
}
double lambda_bound_F(const ModelParams& p, double c, double mating_cap) {
  const double mu_eff = p.mu_F * (1.0 - mating_cap);
  return (c + std::sqrt(c * c + 4.0 * p.D * mu_eff)) / (2.0 * p.D);
}
}  // namespace

TEST_CASE("upper barrier constants at the reference sweep speed") {
  const SystemSuperSolution ss = system_super(kDefault, -0.3);
  const Equilibrium eq = ss.eq;

  // Decay rate: 0.9 of the tightest of the three admissible-rate bounds,
  // with the female bound evaluated at the mating cap alpha C_E / E* = 1/2.
  const double cap = ss.alpha * ss.C_E / eq.E_star;
  CHECK(cap == doctest::Approx(0.5).epsilon(1e-12));
  const double bound = std::min({lambda_bound_E(kDefault, ss.c),
                                 lambda_bound_M(kDefault, ss.c),
                                 lambda_bound_F(kDefault, ss.c, cap)});
  CHECK(ss.lambda == doctest::Approx(0.9 * bound).epsilon(1e-12));
  CHECK(ss.lambda ==
        doctest::Approx(0.12230090491866061).epsilon(1e-12));
  CHECK(ss.eta == doctest::Approx(0.9 * ss.lambda).epsilon(1e-14));

  // Tail constants dominate their equilibrium values.
  CHECK(ss.C_E > eq.E_star);
  const double cm = (1.0 - kDefault.r) * kDefault.nu_E * ss.C_E /
                    (-kDefault.D * ss.lambda * ss.lambda + ss.c * ss.lambda +
                     kDefault.mu_M);
  CHECK(ss.C_M == doctest::Approx(cm).epsilon(1e-12));
  CHECK(ss.C_M > eq.M_star * ss.C_E / eq.E_star);
  CHECK(ss.C_s_min ==
        doctest::Approx(1.1 * ss.C_M / kDefault.gamma *
                        (1.0 / ss.alpha - 1.0)).epsilon(1e-12));

  // Homogeneous decay rate of the male line.
  CHECK(std::abs(kDefault.D * ss.q_minus * ss.q_minus + ss.c * ss.q_minus -
                 kDefault.mu_M) <= 1e-12);
  CHECK(ss.q_minus == doctest::Approx(-0.3082762530298219).epsilon(1e-14));

  // Magnitudes pinned against an independent evaluation of the formulas.
  CHECK(ss.C_E == doctest::Approx(5.334978e49).epsilon(1e-6));
  CHECK(ss.alpha == doctest::Approx(1.813503e-48).epsilon(1e-6));
  CHECK(ss.C_M == doctest::Approx(2.226828e49).epsilon(1e-6));
  CHECK(ss.C_s_min == doctest::Approx(1.350707e97).epsilon(1e-6));
  CHECK(ss.x_M == doctest::Approx(896.2708276).epsilon(1e-6));
}

TEST_CASE("upper barrier profile geometry") {
  const SystemSuperSolution ss = system_super(kDefault, -0.3);
  const Equilibrium eq = ss.eq;

  // Female envelope: flat behind the front, exponential ahead.
  CHECK(ss.phi_F(-4.0) == eq.F_star);
  CHECK(ss.phi_F(3.0) ==
        doctest::Approx(eq.F_star * std::exp(-3.0 * ss.lambda)).epsilon(1e-13));

  // The exact E-line solution leaves the equilibrium at the origin.
  CHECK(ss.x_E == 0.0);
  CHECK(ss.tilde_E(0.0) == doctest::Approx(eq.E_star).epsilon(1e-12));
  CHECK(ss.phi_E(-2.0) == eq.E_star);
  // Flat-to-falling kink at x_E.
  const double right = (ss.tilde_E(1e-6) - ss.tilde_E(0.0)) / 1e-6;
  CHECK(right <= 1e-8);

  // Male crossover: equilibrium cap binds before x_M, the tail after.
  CHECK(ss.phi_M(ss.x_M - 10.0) == eq.M_star);
  CHECK(ss.tilde_M(ss.x_M) == doctest::Approx(eq.M_star).epsilon(1e-8));
  CHECK(ss.phi_M(ss.x_M + 10.0) < eq.M_star);
  CHECK(ss.tilde_M(ss.x_M - 10.0) > eq.M_star);

  // Envelope bounds hold over the whole tail.
  for (double z = 0.0; z <= 1500.0; z += 7.3) {
    CHECK(ss.phi_E(z) <=
          std::min(eq.E_star, ss.C_E * std::exp(-ss.lambda * z)) * (1 + 1e-12));
    CHECK(ss.phi_M(z) <=
          std::min(eq.M_star, ss.C_M * std::exp(-ss.lambda * z)) * (1 + 1e-12));
    CHECK(ss.phi_F(z) >= 0.0);
  }

  // Paired sterile control.
  CHECK(ss.control(3.0) ==
        doctest::Approx(ss.C_s_min * std::exp(-3.0 * ss.eta)).epsilon(1e-13));
}

TEST_CASE("upper barrier at a faster sweep") {
  const SystemSuperSolution ss = system_super(kDefault, -1.0);
  CHECK(ss.lambda == doctest::Approx(0.04392796335313647).epsilon(1e-12));
  CHECK(ss.x_M == doctest::Approx(2101.72).epsilon(1e-4));
  CHECK(ss.C_E > ss.eq.E_star);
  const double cap = ss.alpha * ss.C_E / ss.eq.E_star;
  CHECK(cap == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("upper barrier rejects inadmissible inputs") {
  CHECK_THROWS_AS(system_super(kDefault, 0.0), ConfigError);
  CHECK_THROWS_AS(system_super(kDefault, 0.4), ConfigError);
  ModelParams sterile = kDefault;
  sterile.mu_F = 50.0;  // R < 1
  CHECK_THROWS_AS(system_super(sterile, -0.3), ConfigError);
}

TEST_CASE("lower barrier roots and coefficients") {
  const SystemSubSolution sub = system_sub(kDefault, -0.3);
  const ModelParams& p = kDefault;
  const double c = sub.c;

  // P_F(l) = -l^2 + ((nu_E+mu_E)/c - c/D) l + (nu_E+mu_E+mu_F)/D.
  const double lf = sub.lambda_F_plus;
  const double pf = -lf * lf + ((p.nu_E + p.mu_E) / c - c / p.D) * lf +
                    (p.nu_E + p.mu_E + p.mu_F) / p.D;
  CHECK(std::abs(pf) <= 1e-12 * std::max(1.0, lf * lf));
  const double lm = sub.lambda_M_plus;
  CHECK(std::abs(lm * lm + (c / p.D) * lm - p.mu_M / p.D) <= 1e-12);
  CHECK(lf > 0.0);
  CHECK(lm > 0.0);
  CHECK_FALSE(sub.degenerate);
  CHECK(lf == doctest::Approx(0.76663).epsilon(1e-4));
  CHECK(lm == doctest::Approx(0.9082762530298219).epsilon(1e-12));

  // Mode amplitudes tie the E and F lines together.
  CHECK(sub.b1 == doctest::Approx(-sub.eq.E_star).epsilon(1e-14));
  CHECK(sub.b2 ==
        doctest::Approx(sub.b1 * sub.eq.F_star / sub.eq.E_star *
                        (1.0 - c * lf / (p.nu_E + p.mu_E))).epsilon(1e-12));
  CHECK(sub.a == doctest::Approx(-sub.eq.M_star - sub.b3).epsilon(1e-12));

  CHECK(sub.y_F == doctest::Approx(-1.32857).epsilon(1e-4));
}

TEST_CASE("lower barrier boundary behavior and range") {
  for (const double c : {-0.3, -1.0}) {
    CAPTURE(c);
    const SystemSubSolution sub = system_sub(kDefault, c);
    const Equilibrium eq = sub.eq;

    // Zero extensions begin exactly where each component hits zero.
    CHECK(std::abs(sub.phi_E(-1e-12)) <= 1e-9 * eq.E_star);
    CHECK(std::abs(sub.phi_M(-1e-12)) <= 1e-9 * eq.M_star);
    CHECK(std::abs(sub.phi_F(sub.y_F + 1e-12)) <= 1e-9 * eq.F_star);
    CHECK(sub.phi_E(0.5) == 0.0);
    CHECK(sub.phi_M(0.5) == 0.0);
    CHECK(sub.phi_F(0.5 * sub.y_F) == 0.0);
    CHECK(sub.phi_F(1.0) == 0.0);
    CHECK(sub.y_F < 0.0);

    // Strictly below the equilibrium on the wild side, nonnegative, and
    // converging to the equilibrium far behind the front.
    for (int i = 1; i <= 1000; ++i) {
      const double z = -30.0 * i / 1000.0;
      CHECK(sub.phi_E(z) < eq.E_star);
      CHECK(sub.phi_F(z) < eq.F_star);
      CHECK(sub.phi_M(z) < eq.M_star);
      CHECK(sub.phi_E(z) >= 0.0);
      CHECK(sub.phi_F(z) >= 0.0);
      CHECK(sub.phi_M(z) >= 0.0);
    }
    const double far = -40.0 / sub.lambda_F_plus;
    CHECK(std::abs(sub.phi_E(far) - eq.E_star) <= 1e-10 * eq.E_star);
    CHECK(std::abs(sub.phi_F(far) - eq.F_star) <= 1e-10 * eq.F_star);
    CHECK(std::abs(sub.phi_M(far) - eq.M_star) <= 1e-10 * eq.M_star);
  }
}

TEST_CASE("lower barrier at a faster sweep") {
  const SystemSubSolution sub = system_sub(kDefault, -1.0);
  CHECK(sub.lambda_F_plus == doctest::Approx(2.09009).epsilon(1e-4));
  CHECK(sub.lambda_M_plus == doctest::Approx(2.131371).epsilon(1e-5));
  CHECK(sub.y_F == doctest::Approx(-1.35773).epsilon(1e-4));
  CHECK_FALSE(sub.degenerate);
}

TEST_CASE("lower barrier generalized-mode branch at a root collision") {
  // Tune the male death rate so the male decay rate collides with the
  // female one; the coefficient system then needs the resonant mode.
  const double c = -0.3;
  const double lf = system_sub(kDefault, c).lambda_F_plus;
  ModelParams p = kDefault;
  p.mu_M = kDefault.D * lf * lf + c * lf;
  REQUIRE(p.mu_M > 0.0);

  const SystemSubSolution sub = system_sub(p, c);
  CHECK(sub.degenerate);
  CHECK(std::abs(sub.lambda_F_plus - sub.lambda_M_plus) <= 1e-9);

  const Equilibrium eq = sub.eq;
  CHECK(std::abs(sub.phi_E(-1e-12)) <= 1e-9 * eq.E_star);
  CHECK(std::abs(sub.phi_M(-1e-12)) <= 1e-9 * eq.M_star);
  CHECK(sub.y_F < 0.0);
  CHECK(std::abs(sub.phi_F(sub.y_F + 1e-12)) <= 1e-9 * eq.F_star);
  for (int i = 1; i <= 1000; ++i) {
    const double z = -30.0 * i / 1000.0;
    CHECK(sub.phi_E(z) < eq.E_star);
    CHECK(sub.phi_F(z) < eq.F_star);
    CHECK(sub.phi_M(z) < eq.M_star);
    CHECK(sub.phi_M(z) >= 0.0);
  }
  const double far = -40.0 / sub.lambda_F_plus;
  CHECK(std::abs(sub.phi_M(far) - eq.M_star) <= 1e-10 * eq.M_star);
}

TEST_CASE("lower barrier rejects inadmissible inputs") {
  CHECK_THROWS_AS(system_sub(kDefault, 0.0), ConfigError);
  CHECK_THROWS_AS(system_sub(kDefault, 1.0), ConfigError);
  ModelParams sterile = kDefault;
  sterile.mu_F = 50.0;
  CHECK_THROWS_AS(system_sub(sterile, -0.3), ConfigError);
}
