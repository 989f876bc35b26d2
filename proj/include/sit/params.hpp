// Mosquito population model with sterile-male releases, and its scalar
// reduction. Units: time in days, space in km, densities per km.
//
// State (E, F, M, Ms): aquatic phase, fertilized females, wild males,
// sterile males. Kinetics:
//
//   dE/dt  = beta F (1 - E/K) - (nu_E + mu_E) E
//   dF/dt  = r nu_E E M/(M + gamma Ms) - mu_F F
//   dM/dt  = (1 - r) nu_E E - mu_M M
//   dMs/dt = Lambda - mu_s Ms             (release source Lambda >= 0)
//
// F, M, Ms additionally diffuse with coefficient D (see solver.hpp); E is
// immobile. The mating fraction M/(M + gamma Ms) is defined as 0 when
// M = 0 so that extinction is an equilibrium.
#pragma once

#include <Eigen/Dense>

namespace sit {

struct ModelParams {
  double beta = 10.0;   // eggs per female per day
  double K = 200.0;     // aquatic carrying capacity
  double nu_E = 0.08;   // emergence rate, 1/day
  double mu_E = 0.05;   // aquatic death rate, 1/day
  double mu_F = 0.1;    // female death rate, 1/day
  double mu_M = 0.14;   // male death rate, 1/day
  double mu_s = 0.14;   // sterile male death rate, 1/day
  double gamma = 1.0;   // sterile-male competitiveness
  double r = 0.5;       // female fraction of emergers
  double D = 0.5;       // diffusion coefficient, km^2/day

  // Throws ConfigError if any rate is non-positive or r is outside (0,1).
  void validate() const;
};

struct ScalarParams {
  double beta = 10.0;  // fecundity
  double delta = 2.0;  // per-capita death offset in the birth saturation
  double mu = 1.0;     // death rate
  double K = 200.0;    // sets the birth saturation scale

  // Throws ConfigError unless all positive and beta - mu*delta > 0
  // (otherwise the positive steady state does not exist).
  void validate() const;
};

struct Equilibrium {
  double E_star = 0.0;
  double F_star = 0.0;
  double M_star = 0.0;
};

// Basic offspring number R = beta r nu_E / (mu_F (nu_E + mu_E)).
// The extinction state loses stability exactly when R > 1.
double offspring_number(const ModelParams& p);

// Positive equilibrium of the release-free kinetics. Throws ConfigError
// when R <= 1 (no positive equilibrium exists).
Equilibrium equilibrium(const ModelParams& p);

// Mating fraction M/(M + gamma Ms), with the 0/0 case resolved to 0.
double mating_fraction(double M, double Ms, double gamma);

// Kinetic right-hand side for (E, F, M) at a single point; Ms enters only
// through the mating fraction (its own equation is linear and handled with
// the release term by the solver).
Eigen::Array3d reaction(const Eigen::Array4d& state, const ModelParams& p);

// Vectorized form over fields; output arrays are resized as needed.
void reaction(const Eigen::ArrayXd& E, const Eigen::ArrayXd& F,
              const Eigen::ArrayXd& M, const Eigen::ArrayXd& Ms,
              const ModelParams& p, Eigen::ArrayXd& dE, Eigen::ArrayXd& dF,
              Eigen::ArrayXd& dM);

// Scalar reduction: du/dt = u/(u + lam) * beta u / (beta u / K + delta) - mu u,
// where lam >= 0 is the local control density. The leading factor is the
// mating fraction with gamma = 1; it is 0 at u = 0 by the same convention.
double scalar_reaction(double u, double lam, const ScalarParams& p);

// Positive steady state u* = K (beta - mu delta) / (beta mu) of the
// uncontrolled (lam = 0) scalar model.
double scalar_equilibrium(const ScalarParams& p);

}  // namespace sit
