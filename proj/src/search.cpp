#include "sit/search.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sit/errors.hpp"
#include "sit/solver.hpp"

namespace sit {

bool outcome_is_blocking(OutcomeKind k) {
  return k == OutcomeKind::blocked || k == OutcomeKind::pushed_back ||
         k == OutcomeKind::extinct;
}

namespace {

Outcome checked_probe(const std::function<Outcome(double)>& probe, double v) {
  const Outcome o = probe(v);
  if (o.kind == OutcomeKind::indeterminate) {
    std::ostringstream os;
    os << "search probe at " << v << " gave an indeterminate outcome";
    throw NumericalError(os.str());
  }
  return o;
}

}  // namespace

SearchResult bisect_critical(const std::function<Outcome(double)>& probe,
                             double lo, double hi, double width_target) {
  if (!(hi > lo)) throw ConfigError("search bracket needs hi > lo");
  if (!(width_target > 0)) throw ConfigError("width target must be positive");
  SearchResult res;

  const Outcome at_lo = checked_probe(probe, lo);
  res.history.push_back({lo, at_lo.kind, at_lo.measured_speed, lo, hi});
  if (outcome_is_blocking(at_lo.kind))
    throw ConfigError(
        "invalid search bracket: control already succeeds at the lower "
        "endpoint");
  const Outcome at_hi = checked_probe(probe, hi);
  res.history.push_back({hi, at_hi.kind, at_hi.measured_speed, lo, hi});
  if (!outcome_is_blocking(at_hi.kind))
    throw ConfigError(
        "invalid search bracket: control fails at the upper endpoint");

  while (hi - lo > width_target) {
    const double mid = 0.5 * (lo + hi);
    const Outcome o = checked_probe(probe, mid);
    if (outcome_is_blocking(o.kind))
      hi = mid;
    else
      lo = mid;
    res.history.push_back({mid, o.kind, o.measured_speed, lo, hi});
  }
  res.lo_final = lo;
  res.hi_final = hi;
  res.critical = 0.5 * (lo + hi);

  // Re-run both final endpoints and demand the same classes; a disagreement
  // means the probe is not deterministic and the bracket is untrustworthy.
  const Outcome re_lo = checked_probe(probe, lo);
  res.history.push_back({lo, re_lo.kind, re_lo.measured_speed, lo, hi});
  const Outcome re_hi = checked_probe(probe, hi);
  res.history.push_back({hi, re_hi.kind, re_hi.measured_speed, lo, hi});
  if (outcome_is_blocking(re_lo.kind) || !outcome_is_blocking(re_hi.kind))
    throw NumericalError(
        "bracket endpoint changed class on re-verification after the search");
  return res;
}

namespace {

// How long the stationary establishment phase of a probe runs before the
// sweep starts. The wild population ahead of a blocking release dies off at
// rate >= mu_F, so 200 days shrink any cleared-zone remnant by e^{-20} and
// the sweep then starts from the settled blocked state. A probe whose
// amplitude cannot block even a stationary release simply loses ground
// during this phase and is classified as non-blocking all the same.
constexpr double kEstablishDays = 200.0;

// Probes follow the same staged protocol as the figure experiment: hold the
// release zone still until the state settles, then move it at the probe's
// speed and classify the sweep phase. Near-critical probes commit late (the
// front drifts for a long while before either blooming or settling into the
// pushed profile) and the classifier reports indeterminate to signal that
// the horizon was too short; the probe responds by doubling the sweep
// horizon, at most twice, before letting the indeterminate stand.
Outcome run_and_classify(const ModelParams& p, const ReleaseProfile& rp,
                         const Grid& g, const SchemeConfig& sc) {
  const Equilibrium eq = equilibrium(p);
  StateField init = front_initial_state(p, rp, g);
  if (rp.mode != ReleaseMode::off && rp.c < 0.0) {
    ReleaseProfile hold = rp;
    hold.c = 0.0;
    SchemeConfig hold_sc = sc;
    hold_sc.t_end = kEstablishDays;
    hold_sc.snapshot_every = kEstablishDays;
    const StateField hold_init = front_initial_state(p, hold, g);
    const Trajectory hold_traj = simulate(p, hold, g, hold_sc, hold_init);
    init = hold_traj.snapshots.back();
    init.t = 0.0;
  }
  Outcome out;
  for (int doubling = 0; doubling <= 2; ++doubling) {
    SchemeConfig sweep_sc = sc;
    sweep_sc.t_end = sc.t_end * static_cast<double>(1 << doubling);
    const Trajectory traj = simulate(p, rp, g, sweep_sc, init);
    const FrontTrajectory ft = track_front(traj, 0.1 * eq.F_star);
    out = classify_outcome(ft, g, rp.mode != ReleaseMode::off);
    if (out.kind != OutcomeKind::indeterminate) break;
  }
  return out;
}

}  // namespace

SearchResult critical_amplitude(const ModelParams& p, double eta, double c,
                                const Grid& g, const SchemeConfig& sc,
                                double A_lo, double A_hi) {
  if (!(A_lo >= 0)) throw ConfigError("amplitude bracket must be nonnegative");
  const auto probe = [&](double A) {
    ReleaseProfile rp;
    rp.A = A;
    rp.eta = eta;
    rp.c = c;
    rp.mode = ReleaseMode::moving_exponential;
    return run_and_classify(p, rp, g, sc);
  };
  return bisect_critical(probe, A_lo, A_hi, 0.01 * A_hi);
}

SearchResult critical_speed(const ModelParams& p, double A, double eta,
                            const Grid& g, const SchemeConfig& sc, double c_lo,
                            double c_hi) {
  if (!(c_hi <= 0)) throw ConfigError("speed bracket must satisfy c_hi <= 0");
  const auto probe = [&](double c) {
    ReleaseProfile rp;
    rp.A = A;
    rp.eta = eta;
    rp.c = c;
    rp.mode = ReleaseMode::moving_exponential;
    return run_and_classify(p, rp, g, sc);
  };
  const double scale = std::max(std::abs(c_lo), std::abs(c_hi));
  return bisect_critical(probe, c_lo, c_hi, 0.01 * scale);
}

}  // namespace sit
