#include "sit/release.hpp"

#include <cmath>

#include "sit/errors.hpp"

namespace sit {

void ReleaseProfile::validate() const {
  if (!(A >= 0)) throw ConfigError("release amplitude A must be >= 0");
  if (!(eta >= 0)) throw ConfigError("release decay rate eta must be >= 0");
  if (!(c <= 0)) throw ConfigError("release edge speed c must be <= 0");
}

double lambda_at(const ReleaseProfile& rp, double t, double x) {
  if (rp.mode == ReleaseMode::off) return 0.0;
  const double z = x - rp.c * t;
  if (z <= 0.0) return 0.0;
  return rp.A * std::exp(-rp.eta * z);
}

void lambda_at(const ReleaseProfile& rp, double t, const Eigen::ArrayXd& x,
               Eigen::ArrayXd& out) {
  out.resize(x.size());
  if (rp.mode == ReleaseMode::off || rp.A == 0.0) {
    out.setZero();
    return;
  }
  const Eigen::ArrayXd z = x - rp.c * t;
  out = (z > 0.0).select(rp.A * (-rp.eta * z).exp(), 0.0);
}

double release_mass(const ReleaseProfile& rp) {
  if (rp.mode == ReleaseMode::off) return 0.0;
  if (rp.eta <= 0)
    throw ConfigError("release mass undefined for eta = 0 (uniform release)");
  return rp.A / rp.eta;
}

double ms_lower_bound_amplitude(double C_s, double eta, double c,
                                const ModelParams& p) {
  if (!(C_s >= 0)) throw ConfigError("C_s must be >= 0");
  if (!(eta >= 0)) throw ConfigError("eta must be >= 0");
  if (!(c <= 0)) throw ConfigError("c must be <= 0");
  return C_s * (p.D * eta * eta + std::abs(c) * eta + p.mu_s);
}

double MsSteadyProfile::value(double z) const {
  if (z <= 0.0) return P * std::exp(sigma_plus * z);
  return B * std::exp(-eta * z) + Q * std::exp(sigma_minus * z);
}

MsSteadyProfile ms_steady_profile(double A, double eta, double c,
                                  const ModelParams& p) {
  if (!(A >= 0)) throw ConfigError("A must be >= 0");
  if (!(c <= 0)) throw ConfigError("c must be <= 0");
  MsSteadyProfile s;
  const double disc = std::sqrt(c * c + 4.0 * p.D * p.mu_s);
  s.sigma_plus = (-c + disc) / (2.0 * p.D);
  s.sigma_minus = (-c - disc) / (2.0 * p.D);
  s.eta = eta;
  if (!(eta < -s.sigma_minus))
    throw ConfigError(
        "steady release profile needs eta < -sigma_minus; the source decays "
        "faster than the homogeneous tail and the particular solution is not "
        "the dominant branch");
  const double denom = p.mu_s + c * eta - p.D * eta * eta;
  if (!(denom > 0))
    throw ConfigError("steady release profile needs mu_s + c*eta - D*eta^2 > 0");
  s.B = A / denom;
  // C^1 matching at z = 0: P = B + Q and
  // sigma_plus P = -eta B + sigma_minus Q.
  const double dsig = s.sigma_plus - s.sigma_minus;
  s.Q = -s.B * (s.sigma_plus + eta) / dsig;
  s.P = s.B * (-s.sigma_minus - eta) / dsig;
  return s;
}

double ms_sustaining_amplitude(double C_s, double eta, double c,
                               const ModelParams& p) {
  if (!(C_s >= 0)) throw ConfigError("C_s must be >= 0");
  // Scale from the unit-amplitude steady profile: P is linear in A.
  const MsSteadyProfile unit = ms_steady_profile(1.0, eta, c, p);
  return C_s / unit.P;
}

}  // namespace sit
