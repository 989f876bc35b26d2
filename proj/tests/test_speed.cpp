// Analytic invasion speed: closed-form growth exponent, golden-section
// minimization against a dense scan, and the diffusion scaling law.
#include <doctest.h>

#include <cmath>
#include <random>

#include "sit/errors.hpp"
#include "sit/params.hpp"
#include "sit/speed.hpp"

using namespace sit;

namespace {
const ModelParams kDefault;
}

TEST_CASE("growth exponent closed form at unit decay rate") {
  // (0.5 - 0.23 + sqrt(0.53^2 + 1.6)) / 2 at the default parameters.
  CHECK(gamma1(1.0, kDefault) ==
        doctest::Approx(0.820729538520837).epsilon(1e-14));
}

TEST_CASE("growth exponent is positive across decay rates") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> umu(1e-4, 10.0);
  for (int trial = 0; trial < 200; ++trial)
    CHECK(gamma1(umu(rng), kDefault) > 0.0);
}

TEST_CASE("minimal speed at default parameters") {
  const SpeedResult sr = minimal_speed(kDefault);
  CHECK(sr.c_bar == doctest::Approx(0.8136752424690894).epsilon(1e-12));
  CHECK(std::abs(sr.mu_bar - 1.1158069673422712) <= 1e-6);
  CHECK(sr.gamma1_at_mu_bar ==
        doctest::Approx(gamma1(sr.mu_bar, kDefault)).epsilon(1e-14));
  CHECK(sr.c_bar ==
        doctest::Approx(sr.gamma1_at_mu_bar / sr.mu_bar).epsilon(1e-15));
  CHECK(sr.condition_ok);
  CHECK(speed_condition_value(sr.mu_bar, kDefault) ==
        doctest::Approx(0.8507838210322873).epsilon(1e-10));
}

TEST_CASE("golden-section minimum matches a dense scan") {
  const SpeedResult sr = minimal_speed(kDefault);
  double best = std::numeric_limits<double>::infinity();
  double best_mu = 0.0;
  for (double mu = 0.05; mu <= 5.0; mu += 1e-4) {
    const double v = gamma1(mu, kDefault) / mu;
    if (v < best) {
      best = v;
      best_mu = mu;
    }
  }
  CHECK(std::abs(best - sr.c_bar) <= 1e-6);
  CHECK(std::abs(best_mu - sr.mu_bar) <= 2e-4);
  // No scanned point beats the reported minimum.
  CHECK(best >= sr.c_bar - 1e-12);
}

TEST_CASE("the minimizer is stationary") {
  const SpeedResult sr = minimal_speed(kDefault);
  const double h = 1e-5;
  const auto f = [&](double mu) { return gamma1(mu, kDefault) / mu; };
  CHECK(std::abs(f(sr.mu_bar + h) - f(sr.mu_bar - h)) / (2 * h) <= 1e-6);
  CHECK(f(sr.mu_bar + h) >= sr.c_bar);
  CHECK(f(sr.mu_bar - h) >= sr.c_bar);
}

TEST_CASE("diffusion scaling of the minimal speed") {
  // Rescaling space by sqrt(k) multiplies both D and the speed by sqrt(k).
  const SpeedResult base = minimal_speed(kDefault);
  ModelParams p2 = kDefault;
  p2.D = 2.0 * kDefault.D;
  ModelParams p4 = kDefault;
  p4.D = 4.0 * kDefault.D;
  CHECK(minimal_speed(p2).c_bar ==
        doctest::Approx(std::sqrt(2.0) * base.c_bar).epsilon(1e-12));
  CHECK(minimal_speed(p4).c_bar ==
        doctest::Approx(2.0 * base.c_bar).epsilon(1e-12));
}

TEST_CASE("no invasion speed below the extinction threshold") {
  ModelParams p = kDefault;
  p.mu_F = 50.0;  // R < 1
  CHECK_THROWS_AS(minimal_speed(p), ConfigError);
}

TEST_CASE("scalar front speed") {
  const ScalarParams sp;
  CHECK(kpp_speed(sp) == doctest::Approx(4.0).epsilon(1e-14));
  ScalarParams fast = sp;
  fast.beta = 18.0;  // growth rate 8
  CHECK(kpp_speed(fast) ==
        doctest::Approx(2.0 * std::sqrt(8.0)).epsilon(1e-14));
}
