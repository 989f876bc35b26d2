// Uniform 1D grid, field snapshots, and time-stepping configuration.
#pragma once

#include <Eigen/Dense>
#include <vector>

namespace sit {

struct Grid {
  double x_min = -100.0;
  double x_max = 300.0;
  int n_cells = 1601;  // node count, endpoints included

  double dx() const { return (x_max - x_min) / (n_cells - 1); }
  Eigen::ArrayXd nodes() const;

  // Node count from a requested spacing; (x_max - x_min)/dx must be within
  // 1e-9 of an integer so the stated spacing is reproduced exactly.
  static Grid from_spacing(double x_min, double x_max, double dx);

  // Throws ConfigError unless x_max > x_min and n_cells >= 16.
  void validate() const;
};

struct StateField {
  double t = 0.0;
  Eigen::ArrayXd E, F, M, Ms;

  static StateField zero(const Grid& g);
};

struct SchemeConfig {
  double dt_safety = 0.9;          // in (0, 1]
  double cfl_reaction_cap = 0.5;   // bound on dt * (reaction Lipschitz rate)
  double t_end = 400.0;            // days
  double snapshot_every = 5.0;     // days between stored snapshots
  // Boundary condition is zero-flux Neumann on both ends (fixed).

  void validate() const;
};

struct DiagnosticsRow {
  double t = 0.0;
  double clipped_mass = 0.0;  // |negative overshoot| * dx summed since last row
  double dt = 0.0;
};

struct Trajectory {
  Grid grid;
  std::vector<StateField> snapshots;
  std::vector<DiagnosticsRow> diagnostics;
  double dt = 0.0;  // actual step used (snapped to divide snapshot_every)
};

struct ScalarTrajectory {
  Grid grid;
  std::vector<double> times;
  std::vector<Eigen::ArrayXd> u;
  std::vector<DiagnosticsRow> diagnostics;
  double dt = 0.0;
};

}  // namespace sit
