// Scalar traveling barriers: the exponential upper profile with its
// admissible control box, and the integrated stationary lower bump.
#include <doctest.h>

#include <cmath>

#include "sit/errors.hpp"
#include "sit/params.hpp"
#include "sit/quadrature.hpp"
#include "sit/scalar_waves.hpp"

using namespace sit;

namespace {
const ScalarParams kScalar;  // beta 10, delta 2, mu 1, K 200; u* = 160
}

TEST_CASE("upper barrier decay root and control box") {
  const ScalarSuperSolution ss = scalar_super(kScalar, -1.0, 0.1);
  // r solves r^2 + c r + (alpha beta/delta - mu) = 0 with the minus branch:
  // for c=-1, alpha=0.1 that is (1 - sqrt(3))/2.
  CHECK(ss.r_alpha ==
        doctest::Approx(0.5 * (1.0 - std::sqrt(3.0))).epsilon(1e-14));
  const double poly = ss.r_alpha * ss.r_alpha + ss.c * ss.r_alpha +
                      (ss.alpha * kScalar.beta / kScalar.delta - kScalar.mu);
  CHECK(std::abs(poly) <= 1e-12);
  CHECK(ss.r_alpha < 0.0);
  CHECK(ss.u_star == doctest::Approx(160.0));
  CHECK(ss.A_min == doctest::Approx(1440.0));  // u*/alpha - u*
  CHECK(ss.eta_max == doctest::Approx(-ss.r_alpha));
}

TEST_CASE("upper barrier profile shape") {
  const ScalarSuperSolution ss = scalar_super(kScalar, -0.5, 0.15);
  CHECK(ss.value(-3.0) == 160.0);
  CHECK(ss.value(0.0) == doctest::Approx(160.0));
  CHECK(ss.value(2.0) ==
        doctest::Approx(160.0 * std::exp(2.0 * ss.r_alpha)).epsilon(1e-14));
  CHECK(ss.value(5.0) < ss.value(2.0));
  // Kink at the origin: flat from the left, falling to the right.
  const double left_slope = (ss.value(0.0) - ss.value(-1e-7)) / 1e-7;
  const double right_slope = (ss.value(1e-7) - ss.value(0.0)) / 1e-7;
  CHECK(std::abs(left_slope) <= 1e-9);
  CHECK(right_slope == doctest::Approx(ss.r_alpha * 160.0).epsilon(1e-6));
  CHECK(left_slope > right_slope);
}

TEST_CASE("upper barrier near the admissibility boundary") {
  const double alpha_max = kScalar.delta * kScalar.mu / kScalar.beta;  // 0.2
  const ScalarSuperSolution ss =
      scalar_super(kScalar, -1.0, alpha_max - 1e-9);
  // The controlled growth rate tends to 0^- and so does the decay root.
  CHECK(ss.r_alpha < 0.0);
  CHECK(ss.r_alpha > -1e-8);
}

TEST_CASE("upper barrier rejects inadmissible inputs") {
  CHECK_THROWS_AS(scalar_super(kScalar, -1.0, 0.0), ConfigError);
  CHECK_THROWS_AS(scalar_super(kScalar, -1.0, 0.2), ConfigError);
  CHECK_THROWS_AS(scalar_super(kScalar, -1.0, 0.5), ConfigError);
  CHECK_THROWS_AS(scalar_super(kScalar, 0.0, 0.1), ConfigError);
  CHECK_THROWS_AS(scalar_super(kScalar, 0.3, 0.1), ConfigError);
}

TEST_CASE("lower bump boundary data and energy balance") {
  const ScalarSubSolution sub = scalar_sub(kScalar);
  CHECK(sub.value(0.0) == 0.0);
  CHECK(sub.value(1.0) == 0.0);
  CHECK(sub.derivative(2.0) == 0.0);
  CHECK(sub.u_star == doctest::Approx(160.0));

  // Launch slope carries the full potential drop between 0 and u*.
  CHECK(sub.slope_at_zero ==
        doctest::Approx(-std::sqrt(2.0 * sub.total_energy())).epsilon(1e-14));
  CHECK(sub.slope_at_zero < 0.0);

  // Mechanical energy w'^2/2 + \int_0^w f is conserved along the orbit.
  const auto f = [&](double s) { return scalar_reaction(s, 0.0, kScalar); };
  const double scale = std::max(1.0, sub.total_energy());
  for (const double z : {-0.5, -1.0, -2.0, -4.0, -8.0}) {
    const double w = sub.value(z);
    const double wp = sub.derivative(z);
    const double rest = gauss_legendre(f, w, sub.u_star, 256);
    CHECK(std::abs(0.5 * wp * wp - rest) <= 1e-8 * scale);
  }
}

TEST_CASE("lower bump is a monotone connection to the steady state") {
  const ScalarSubSolution sub = scalar_sub(kScalar);
  double prev = sub.value(0.0);
  for (double z = -0.25; z >= sub.x_left; z -= 0.25) {
    const double w = sub.value(z);
    CHECK(w > prev);
    CHECK(w < sub.u_star);
    prev = w;
  }
  // Far tail: within 1e-3 of u* once the linearized decay has e-folded
  // seven-plus times.
  CHECK(std::abs(sub.value(-7.0 / sub.kappa) - sub.u_star) <=
        1e-3 * sub.u_star);
  CHECK(std::abs(sub.value(sub.x_left) - sub.u_star) <= 1e-5 * sub.u_star);
  // The approach rate is the saddle rate sqrt(|f'(u*)|).
  const double fp = (scalar_reaction(sub.u_star + 1e-6, 0.0, kScalar) -
                     scalar_reaction(sub.u_star - 1e-6, 0.0, kScalar)) /
                    2e-6;
  CHECK(sub.kappa == doctest::Approx(std::sqrt(-fp)).epsilon(1e-6));
}
