// Quadrature toolbox sanity: closed-form integrals, rule-doubling
// agreement, and adaptive refinement on peaked integrands.
#include <doctest.h>

#include <cmath>

#include "sit/quadrature.hpp"

using namespace sit;

TEST_CASE("gauss-legendre on closed forms") {
  CHECK(gauss_legendre([](double x) { return std::sin(x); }, 0.0, M_PI) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(gauss_legendre([](double x) { return std::exp(x); }, -1.0, 2.0) ==
        doctest::Approx(std::exp(2.0) - std::exp(-1.0)).epsilon(1e-14));
  CHECK(gauss_legendre([](double) { return 3.5; }, 2.0, 2.0) == 0.0);
  // Orientation carries the sign.
  CHECK(gauss_legendre([](double x) { return x; }, 1.0, 0.0) ==
        doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("an n-point rule is exact to degree 2n-1") {
  // x^15 over [0, 2] with the 8-point rule: 2^16/16 = 4096.
  const double v =
      gauss_legendre([](double x) { return std::pow(x, 15); }, 0.0, 2.0, 8);
  CHECK(v == doctest::Approx(4096.0).epsilon(1e-13));
}

TEST_CASE("rule doubling agrees on a smooth oscillatory integrand") {
  const auto f = [](double x) { return std::cos(7.0 * x) * std::exp(-x * x); };
  const double a = gauss_legendre(f, -3.0, 3.0, 256);
  const double b = gauss_legendre(f, -3.0, 3.0, 512);
  CHECK(a == doctest::Approx(b).epsilon(1e-13));
}

TEST_CASE("adaptive simpson hits a sharp gaussian") {
  const double v = adaptive_simpson(
      [](double x) { return std::exp(-50.0 * x * x); }, -1.0, 1.0, 1e-11);
  const double exact = std::sqrt(M_PI / 50.0) * std::erf(std::sqrt(50.0));
  CHECK(v == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("adaptive simpson respects orientation and degenerate spans") {
  CHECK(adaptive_simpson([](double x) { return x * x; }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-11));
  CHECK(adaptive_simpson([](double) { return 1.0; }, 4.0, 4.0) == 0.0);
}
