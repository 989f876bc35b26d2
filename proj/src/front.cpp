#include "sit/front.hpp"

#include <cmath>

namespace sit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Rightmost crossing of u >= thr on the grid, linearly interpolated.
double front_position(const Eigen::ArrayXd& u, const Eigen::ArrayXd& x,
                      double thr) {
  const int n = static_cast<int>(u.size());
  for (int i = n - 1; i >= 0; --i) {
    if (u[i] >= thr) {
      if (i == n - 1) return x[n - 1];
      // u[i] >= thr > u[i+1]; interpolate the crossing.
      const double w = (u[i] - thr) / (u[i] - u[i + 1]);
      return x[i] + w * (x[i + 1] - x[i]);
    }
  }
  return kNegInf;
}

struct FitSamples {
  std::vector<double> t, pos;
};

FitSamples usable_samples(const FrontTrajectory& ft, double t_lo, double t_hi,
                          const Grid& g, double margin) {
  FitSamples s;
  for (size_t i = 0; i < ft.times.size(); ++i) {
    const double t = ft.times[i], p = ft.positions[i];
    if (t < t_lo || t > t_hi) continue;
    if (!std::isfinite(p)) continue;
    if (p > g.x_max - margin || p < g.x_min + margin) continue;
    s.t.push_back(t);
    s.pos.push_back(p);
  }
  return s;
}

double lsq_slope(const FitSamples& s) {
  const size_t n = s.t.size();
  double mt = 0, mp = 0;
  for (size_t i = 0; i < n; ++i) {
    mt += s.t[i];
    mp += s.pos[i];
  }
  mt /= n;
  mp /= n;
  double num = 0, den = 0;
  for (size_t i = 0; i < n; ++i) {
    num += (s.t[i] - mt) * (s.pos[i] - mp);
    den += (s.t[i] - mt) * (s.t[i] - mt);
  }
  return den > 0 ? num / den : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

std::string to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::invasion: return "invasion";
    case OutcomeKind::blocked: return "blocked";
    case OutcomeKind::pushed_back: return "pushed_back";
    case OutcomeKind::reinvasion: return "reinvasion";
    case OutcomeKind::extinct: return "extinct";
    case OutcomeKind::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

FrontTrajectory track_front(const Trajectory& traj, double threshold) {
  FrontTrajectory ft;
  ft.threshold = threshold;
  const Eigen::ArrayXd x = traj.grid.nodes();
  for (const StateField& s : traj.snapshots) {
    ft.times.push_back(s.t);
    ft.positions.push_back(front_position(s.F, x, threshold));
  }
  return ft;
}

FrontTrajectory track_front_scalar(const ScalarTrajectory& traj,
                                   double threshold) {
  FrontTrajectory ft;
  ft.threshold = threshold;
  const Eigen::ArrayXd x = traj.grid.nodes();
  for (size_t i = 0; i < traj.u.size(); ++i) {
    ft.times.push_back(traj.times[i]);
    ft.positions.push_back(front_position(traj.u[i], x, threshold));
  }
  return ft;
}

double fit_front_speed(const FrontTrajectory& ft, double t_lo, double t_hi,
                       const Grid& g, double boundary_margin) {
  const FitSamples s = usable_samples(ft, t_lo, t_hi, g, boundary_margin);
  if (s.t.size() < 3) return std::numeric_limits<double>::quiet_NaN();
  return lsq_slope(s);
}

Outcome classify_outcome(const FrontTrajectory& ft, const Grid& g,
                         bool release_on, double dead_band) {
  constexpr double kBoundaryMargin = 20.0;
  Outcome out;
  if (ft.times.empty()) return out;
  if (!std::isfinite(ft.positions.back())) {
    out.kind = OutcomeKind::extinct;
    out.measured_speed = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  const double t_end = ft.times.back();

  // A front that ends inside the right boundary margin has conclusively run
  // away (it can only get there by advancing across the domain); report the
  // run-away class rather than starving the boundary-filtered fit below.
  // The speed is fitted on the pre-escape samples, falling back to the full
  // horizon when the escape happened before the fit window opened.
  if (ft.positions.back() > g.x_max - kBoundaryMargin) {
    out.kind = release_on ? OutcomeKind::reinvasion : OutcomeKind::invasion;
    double v = fit_front_speed(ft, 0.5 * t_end, t_end, g, kBoundaryMargin);
    if (!std::isfinite(v))
      v = fit_front_speed(ft, 0.0, t_end, g, kBoundaryMargin);
    out.measured_speed = v;
    return out;
  }

  const FitSamples s =
      usable_samples(ft, 0.5 * t_end, t_end, g, kBoundaryMargin);
  if (s.t.size() < 3) return out;

  const double slope = lsq_slope(s);
  out.measured_speed = slope;

  // Genuine oscillation: the position both rises and falls substantially
  // within the window. Monotone motion with curvature is not flagged.
  double rise = 0, fall = 0;
  for (size_t i = 1; i < s.pos.size(); ++i) {
    const double d = s.pos[i] - s.pos[i - 1];
    (d > 0 ? rise : fall) += std::abs(d);
  }
  if (std::min(rise, fall) > 10.0) return out;  // indeterminate

  if (!release_on && slope > 0.0) {
    out.kind = OutcomeKind::invasion;
    return out;
  }
  const double displacement = s.pos.back() - s.pos.front();
  if (std::abs(displacement) <= 5.0 && std::abs(slope) <= dead_band) {
    out.kind = OutcomeKind::blocked;
    return out;
  }
  if (slope < -dead_band) {
    out.kind = OutcomeKind::pushed_back;
    return out;
  }
  if (release_on && slope > dead_band) {
    out.kind = OutcomeKind::reinvasion;
    return out;
  }
  return out;  // indeterminate
}

}  // namespace sit
