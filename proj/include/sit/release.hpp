// Sterile-male release schedules and the amplitude analysis for keeping a
// moving exponential barrier under the released density.
//
// The moving release is Lambda(t, x) = A exp(-eta (x - c t)) for x - ct > 0
// and 0 otherwise, a source that travels leftward at speed |c| (c <= 0) and
// decays ahead of its edge with spatial rate eta.
#pragma once

#include <Eigen/Dense>

#include "sit/params.hpp"

namespace sit {

enum class ReleaseMode { moving_exponential, off };

struct ReleaseProfile {
  double A = 0.0;    // amplitude at the moving edge, density/day
  double eta = 0.2;  // spatial decay rate, 1/km
  double c = 0.0;    // edge speed, km/day; c <= 0 (sweeps leftward)
  ReleaseMode mode = ReleaseMode::moving_exponential;

  // Throws ConfigError unless A >= 0, eta >= 0, c <= 0. eta = 0 gives a
  // spatially uniform half-line release (mass is then undefined).
  void validate() const;
};

// Source density at (t, x); the boundary x - ct = 0 lies on the zero branch.
double lambda_at(const ReleaseProfile& rp, double t, double x);

// Vectorized evaluation over nodes; out is resized as needed.
void lambda_at(const ReleaseProfile& rp, double t, const Eigen::ArrayXd& x,
               Eigen::ArrayXd& out);

// Total sterile males released per day, integral of Lambda over x: A/eta.
// Throws ConfigError when eta = 0 (divergent mass).
double release_mass(const ReleaseProfile& rp);

// Crude sufficient amplitude for keeping Ms(t,x) >= C_s exp(-eta (x - ct))
// from comparable initial data: A = C_s (D eta^2 + |c| eta + mu_s). It
// covers the reaction, frame-motion, and diffusion terms of the target
// profile separately, which overpays since their signed sum is what matters
// but ignores the diffusive loss through the profile's kink at the edge.
double ms_lower_bound_amplitude(double C_s, double eta, double c,
                                const ModelParams& p);

// Steady traveling profile of dMs/dt - D Ms_xx = Lambda - mu_s Ms in the
// frame z = x - ct:
//   z > 0:  B exp(-eta z) + Q exp(sigma_minus z)
//   z <= 0: P exp(sigma_plus z)
// with sigma_pm the roots of D s^2 + c s - mu_s = 0 and (Q, P) fixed by
// C^1 matching at z = 0. Valid for eta < -sigma_minus.
struct MsSteadyProfile {
  double B = 0, Q = 0, P = 0;
  double sigma_plus = 0, sigma_minus = 0;
  double eta = 0;
  double value(double z) const;
};

MsSteadyProfile ms_steady_profile(double A, double eta, double c,
                                  const ModelParams& p);

// Exact minimal amplitude for the steady profile to dominate
// C_s exp(-eta z) pointwise on z > 0. The ratio profile/target is monotone
// in z, so the binding constraint is at the edge: P >= C_s. Requires
// eta < -sigma_minus and mu_s + c eta - D eta^2 > 0; throws ConfigError
// otherwise.
double ms_sustaining_amplitude(double C_s, double eta, double c,
                               const ModelParams& p);

}  // namespace sit
