#include "sit/params.hpp"

#include <cmath>
#include <sstream>

#include "sit/errors.hpp"

namespace sit {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ConfigError(std::string("invalid model parameters: ") + what);
}

}  // namespace

void ModelParams::validate() const {
  require(beta > 0, "beta must be > 0");
  require(K > 0, "K must be > 0");
  require(nu_E > 0, "nu_E must be > 0");
  require(mu_E > 0, "mu_E must be > 0");
  require(mu_F > 0, "mu_F must be > 0");
  require(mu_M > 0, "mu_M must be > 0");
  require(mu_s > 0, "mu_s must be > 0");
  require(gamma > 0, "gamma must be > 0");
  require(r > 0 && r < 1, "r must lie in (0,1)");
  require(D > 0, "D must be > 0");
}

void ScalarParams::validate() const {
  require(beta > 0, "scalar beta must be > 0");
  require(delta > 0, "scalar delta must be > 0");
  require(mu > 0, "scalar mu must be > 0");
  require(K > 0, "scalar K must be > 0");
  require(beta - mu * delta > 0,
          "scalar model needs beta - mu*delta > 0 for a positive steady state");
}

double offspring_number(const ModelParams& p) {
  return p.beta * p.r * p.nu_E / (p.mu_F * (p.nu_E + p.mu_E));
}

Equilibrium equilibrium(const ModelParams& p) {
  p.validate();
  const double surplus = p.beta * p.r * p.nu_E - p.mu_F * (p.nu_E + p.mu_E);
  if (surplus <= 0) {
    std::ostringstream os;
    os << "no positive equilibrium: offspring number R = "
       << offspring_number(p) << " <= 1";
    throw ConfigError(os.str());
  }
  Equilibrium eq;
  eq.E_star = p.K * surplus / (p.beta * p.r * p.nu_E);
  eq.F_star = p.K * surplus / (p.beta * p.mu_F);
  eq.M_star = p.K * ((1.0 - p.r) / p.r) * surplus / (p.beta * p.mu_M);
  return eq;
}

double mating_fraction(double M, double Ms, double gamma) {
  const double den = M + gamma * Ms;
  if (den <= 0.0) return 0.0;
  return M / den;
}

Eigen::Array3d reaction(const Eigen::Array4d& s, const ModelParams& p) {
  const double E = s[0], F = s[1], M = s[2], Ms = s[3];
  const double mf = mating_fraction(M, Ms, p.gamma);
  Eigen::Array3d out;
  out[0] = p.beta * F * (1.0 - E / p.K) - (p.nu_E + p.mu_E) * E;
  out[1] = p.r * p.nu_E * E * mf - p.mu_F * F;
  out[2] = (1.0 - p.r) * p.nu_E * E - p.mu_M * M;
  return out;
}

void reaction(const Eigen::ArrayXd& E, const Eigen::ArrayXd& F,
              const Eigen::ArrayXd& M, const Eigen::ArrayXd& Ms,
              const ModelParams& p, Eigen::ArrayXd& dE, Eigen::ArrayXd& dF,
              Eigen::ArrayXd& dM) {
  const Eigen::Index n = E.size();
  dE.resize(n);
  dF.resize(n);
  dM.resize(n);
  dE = p.beta * F * (1.0 - E / p.K) - (p.nu_E + p.mu_E) * E;
  // Mating fraction with the 0-denominator convention applied elementwise.
  const Eigen::ArrayXd den = M + p.gamma * Ms;
  const Eigen::ArrayXd mf = (den > 0.0).select(M / den.max(1e-300), 0.0);
  dF = p.r * p.nu_E * E * mf - p.mu_F * F;
  dM = (1.0 - p.r) * p.nu_E * E - p.mu_M * M;
}

double scalar_reaction(double u, double lam, const ScalarParams& p) {
  const double mf = mating_fraction(u, lam, 1.0);
  return mf * p.beta * u / (p.beta * u / p.K + p.delta) - p.mu * u;
}

double scalar_equilibrium(const ScalarParams& p) {
  p.validate();
  return p.K * (p.beta - p.mu * p.delta) / (p.beta * p.mu);
}

}  // namespace sit
