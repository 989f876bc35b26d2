// Time integration: implicit (backward Euler) diffusion for the mobile
// components F, M, Ms, explicit reaction and release source at the old
// time level, and a purely explicit update for the immobile E.
//
// The implicit diffusion matrix I - nu L (nu = D dt / dx^2, L the zero-flux
// Laplacian stencil) is an M-matrix, so diffusion preserves positivity and
// constants exactly; positivity of a full step then only depends on the dt
// cap for the reaction terms. Negative overshoot, if any, is clipped to
// zero and the clipped mass recorded; a step fails hard when the clip
// exceeds 1e-8 of the component's scale.
#pragma once

#include <Eigen/Dense>
#include <functional>

#include "sit/grid.hpp"
#include "sit/params.hpp"
#include "sit/release.hpp"

namespace sit {

// Bound on the kinetic rates used in the dt cap: the largest row sum of
// reaction coefficients with the mating fraction counted as a unit
// coefficient and F capped by its invariant-region bound
// F_cap = r nu_E K / mu_F. For the default parameters this is the E row,
// beta F_cap / K + (nu_E + mu_E) + beta.
double reaction_rate_bound(const ModelParams& p);
double scalar_rate_bound(const ScalarParams& p);

// dt = dt_safety * min(dx^2 / (2 D), cfl_reaction_cap / rate_bound).
// simulate() additionally shrinks this so an integer number of steps lands
// exactly on each snapshot time.
double compute_dt(const ModelParams& p, const Grid& g, const SchemeConfig& sc);
double compute_dt_scalar(const ScalarParams& p, const Grid& g,
                         const SchemeConfig& sc);

// Backward-Euler diffusion solve (I - nu L) u_new = u with zero-flux ends;
// nu = D dt / dx^2. Factorization is precomputed once per (n, nu).
class DiffusionOperator {
 public:
  DiffusionOperator() = default;
  DiffusionOperator(int n, double nu);
  void apply_inverse(Eigen::ArrayXd& u) const;
  double nu() const { return nu_; }

 private:
  double nu_ = 0.0;
  Eigen::ArrayXd upper_ratio_;  // forward-sweep coefficients
  Eigen::ArrayXd inv_diag_;
};

// One-shot helper around DiffusionOperator, used by convergence tests.
void implicit_diffusion_step(Eigen::ArrayXd& u, double nu);

// Canonical initial data for the control experiments: the wild population
// sits at its positive equilibrium on x < 0 with empty space to the right.
// When the release is on, the campaign is taken to be already established at
// t = 0, so the sterile field starts at the traveling steady profile of the
// release term (its position at t = 0); with the release off, Ms starts at
// zero. Starting the sterile field from zero instead would hand the wild
// front a head start of ~1/mu_s days against a thin carpet, and a moving
// release could lose a race it is able to win from the established state.
StateField front_initial_state(const ModelParams& p, const ReleaseProfile& rp,
                               const Grid& g);

// Integrates the four-component system from init.t to init.t + sc.t_end,
// storing a snapshot every sc.snapshot_every days (t_end must be an integer
// multiple of snapshot_every). Initial data must be nonnegative with
// E <= K. Throws NumericalError if positivity clipping exceeds threshold.
Trajectory simulate(const ModelParams& p, const ReleaseProfile& rp,
                    const Grid& g, const SchemeConfig& sc,
                    const StateField& init);

// Same scheme, but Ms is not evolved: it is overwritten from the given
// field function at every step (control imposed exactly). Used to realize
// comparison arguments where the sterile density is a known profile.
Trajectory simulate_prescribed_ms(
    const ModelParams& p, const Grid& g, const SchemeConfig& sc,
    const StateField& init,
    const std::function<void(double t, const Eigen::ArrayXd& x,
                             Eigen::ArrayXd& ms)>& control);

// Ms equation alone (linear): dMs/dt - D Ms_xx = Lambda - mu_s Ms.
// Returns snapshots of Ms only (packed into StateField::Ms).
Trajectory simulate_ms_only(const ModelParams& p, const ReleaseProfile& rp,
                            const Grid& g, const SchemeConfig& sc,
                            const Eigen::ArrayXd& ms_init);

// Scalar model with unit diffusion; the control field lam(t,x) from the
// release profile enters the reaction through the mating-fraction factor.
ScalarTrajectory simulate_scalar(const ScalarParams& p,
                                 const ReleaseProfile& rp, const Grid& g,
                                 const SchemeConfig& sc,
                                 const Eigen::ArrayXd& u_init);

}  // namespace sit
