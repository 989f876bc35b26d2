// Front position extraction from simulated trajectories and qualitative
// outcome classification (invasion / blocking / push-back / reinvasion).
#pragma once

#include <limits>
#include <string>
#include <vector>

#include "sit/grid.hpp"
#include "sit/release.hpp"

namespace sit {

struct FrontTrajectory {
  std::vector<double> times;
  std::vector<double> positions;  // -infinity when the field is under threshold
  double threshold = 0.0;
};

enum class OutcomeKind {
  invasion,
  blocked,
  pushed_back,
  reinvasion,
  extinct,
  indeterminate
};

std::string to_string(OutcomeKind k);

struct Outcome {
  OutcomeKind kind = OutcomeKind::indeterminate;
  double measured_speed = 0.0;  // km/day, LSQ slope over the fit window
};

// Rightmost crossing of F >= threshold, linearly interpolated between
// nodes; -infinity when no node reaches the threshold. Default threshold
// convention is 0.1 * F_star, chosen by the caller.
FrontTrajectory track_front(const Trajectory& traj, double threshold);
FrontTrajectory track_front_scalar(const ScalarTrajectory& traj,
                                   double threshold);

// Least-squares slope of position vs time over samples with
// t in [t_lo, t_hi], finite position, and position inside
// [x_min + margin, x_max - margin] (boundary-saturated samples are
// excluded). Returns NaN when fewer than 3 samples qualify.
double fit_front_speed(const FrontTrajectory& ft, double t_lo, double t_hi,
                       const Grid& g, double boundary_margin = 20.0);

// Classification over the last half of the horizon, boundary-filtered as in
// fit_front_speed. Decision order:
//   extinct       final front at -infinity
//   invasion /    final front inside the right boundary margin (the front
//   reinvasion    ran away; class picked by release_on)
//   indeterminate fewer than 3 usable samples, or the position both rises
//                 and falls by more than 10 km inside the window
//   invasion      release off and slope > 0
//   blocked       |net displacement| <= 5 km and |slope| <= dead_band
//   pushed_back   slope < -dead_band
//   reinvasion    release on and slope > +dead_band
//   indeterminate otherwise
// dead_band defaults to 0.02 km/day.
Outcome classify_outcome(const FrontTrajectory& ft, const Grid& g,
                         bool release_on, double dead_band = 0.02);

}  // namespace sit
