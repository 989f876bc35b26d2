// Numerical verification of the barrier inequalities.
//
// Residuals are formed with finite differences of the profile callables so
// the check is independent of the closed forms used to build them: 6th-order
// central stencils away from kinks (high order keeps the step long enough
// that value-rounding noise, which enters the second derivative as
// O(eps |f| / h^2), stays far below the tolerance), one-sided 2nd-order
// stencils inside a band of 3h around each kink (those rows are reported
// separately, since the lower-order stencil's truncation error is not
// evidence against the profile), and the row on a kink itself is replaced
// by the one-sided derivative-jump conditions.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sit/grid.hpp"
#include "sit/params.hpp"
#include "sit/scalar_waves.hpp"
#include "sit/system_waves.hpp"

namespace sit {

struct ResidualExtreme {
  double value = 0.0;  // worst signed residual (min for upper, max for lower)
  double z = std::numeric_limits<double>::quiet_NaN();
};

struct EquationCheck {
  std::string name;
  ResidualExtreme worst_interior;  // binding: rows > 2h from every kink
  ResidualExtreme worst_band;      // informational: rows within [h/2, 2h]
  int interior_count = 0;
  int band_count = 0;
  int on_kink_count = 0;
};

struct KinkCheck {
  std::string profile;
  double z = 0.0;
  double left_slope = 0.0;
  double right_slope = 0.0;
  double value_gap = 0.0;  // right value - left value
  bool slope_ok = false;
  bool value_ok = false;
};

struct WaveVerifyReport {
  bool upper = true;  // true: barrier from above, false: from below
  double tol = 0.0;
  double h = 0.0;
  std::vector<EquationCheck> equations;
  std::vector<KinkCheck> kinks;
  bool pass = false;

  std::string to_text() const;
};

// Uniform grid with U(-0.4, 0.4)*spacing jitter on every node, so stencil
// rows never align with construction-time sample points.
std::vector<double> jittered_grid(double z_min, double z_max, int n,
                                  std::uint64_t seed);

WaveVerifyReport verify_supersolution(const SystemSuperSolution& ss,
                                      const std::vector<double>& grid,
                                      double tol);
// Scalar upper barrier checked against the control A e^{-eta z} on z > 0.
WaveVerifyReport verify_supersolution(const ScalarSuperSolution& ss, double A,
                                      double eta,
                                      const std::vector<double>& grid,
                                      double tol);
// Defaults to the barrier's own admissible box corner (A_min, eta_max).
WaveVerifyReport verify_supersolution(const ScalarSuperSolution& ss,
                                      const std::vector<double>& grid,
                                      double tol);

WaveVerifyReport verify_subsolution(const SystemSubSolution& ss,
                                    const std::vector<double>& grid,
                                    double tol);
// The scalar lower barrier is speed-independent; the residual is not.
// Sample points are snapped to the profile's integration lattice so the
// stencils difference stored orbit values rather than interpolant error.
WaveVerifyReport verify_subsolution(const ScalarSubSolution& ss, double c,
                                    const std::vector<double>& grid,
                                    double tol);

// Pointwise ordering of a lower/upper barrier pair on a sample grid;
// returns the worst signed excess max_X(phi_lower - phi_upper) (<= 0 good).
double barrier_ordering_gap(const SystemSubSolution& lower,
                            const SystemSuperSolution& upper,
                            const std::vector<double>& grid);

struct OrderingReport {
  // Largest violations of: E,F,M of `more` below those of `less`, and
  // Ms of `more` above Ms of `less`. Positive numbers are violations.
  double worst_E = 0.0, worst_F = 0.0, worst_M = 0.0, worst_Ms = 0.0;
  double worst_t = 0.0, worst_x = 0.0;
  std::string worst_component;
  double tol = 0.0;
  bool pass = false;

  std::string to_text() const;
};

// Comparison-principle realization: the more-sterilized run must sit below
// the less-sterilized run componentwise (and above it in Ms) at every
// snapshot. Trajectories must share grid and snapshot times.
OrderingReport verify_ordering(const Trajectory& more_sterile,
                               const Trajectory& less_sterile, double tol);

struct MsBoundReport {
  bool pass = false;
  double worst_rel_deficit = 0.0;  // max over checked nodes of deficit/bound
  double first_violation_t = std::numeric_limits<double>::quiet_NaN();
  double first_violation_x = std::numeric_limits<double>::quiet_NaN();
  long n_checked = 0;
  double rel_tol = 0.0;

  std::string to_text() const;
};

// Integrates the sterile line alone under the moving-exponential release
// (amplitude A, decay eta, speed c) from init_Ms and checks
// Ms(t, x) >= C_s e^{-eta (x - c t)} wherever x - c t > 0, within a relative
// slack covering the spatial discretization error plus a tiny floor.
MsBoundReport verify_ms_bound(const ModelParams& p, double C_s, double eta,
                              double c, double A,
                              const Eigen::ArrayXd& init_Ms, const Grid& g,
                              const SchemeConfig& scheme, double rel_tol = 0.02);

}  // namespace sit
