// Bisection searches for critical release parameters: the blocking
// amplitude at fixed sweep speed, and the fastest sweep speed still blocked
// at fixed amplitude.
//
// An outcome counts as success (control holds) when it is blocked,
// pushed_back, or extinct; invasion and reinvasion count as failure. An
// indeterminate probe aborts the search.
#pragma once

#include <functional>
#include <vector>

#include "sit/front.hpp"
#include "sit/grid.hpp"
#include "sit/params.hpp"
#include "sit/release.hpp"

namespace sit {

struct ProbeRecord {
  double param = 0.0;  // amplitude or speed probed
  OutcomeKind kind = OutcomeKind::indeterminate;
  double measured_speed = 0.0;
  double lo_after = 0.0, hi_after = 0.0;  // bracket after this probe
};

struct SearchResult {
  double critical = 0.0;  // midpoint of the final bracket
  double lo_final = 0.0, hi_final = 0.0;
  // First two entries probe the initial endpoints, the last two re-verify
  // the final bracket; everything between is the bisection itself.
  std::vector<ProbeRecord> history;
};

bool outcome_is_blocking(OutcomeKind k);

// Generic bisection on [lo, hi] where the success class must hold at hi and
// the failure class at lo (both endpoints are probed first; a bracket that
// does not straddle throws ConfigError). Stops when hi - lo <= width_target,
// then re-probes both final endpoints and throws NumericalError if either
// changed class. probe must be deterministic.
SearchResult bisect_critical(const std::function<Outcome(double)>& probe,
                             double lo, double hi, double width_target);

// Critical amplitude at fixed (eta, c): smallest A in [A_lo, A_hi] whose
// moving release stops the invasion, bracketed to within 1% of A_hi.
// Probes run the staged protocol (establish the carpet with the zone held
// still, then sweep), so the sterile field at every stage scales
// monotonically with A and the outcome ordering assumed by the bisection
// follows from the comparison principle. A probe whose sweep ends
// indeterminate is retried with the horizon doubled (at most twice).
// Front threshold 0.1 F_star.
SearchResult critical_amplitude(const ModelParams& p, double eta, double c,
                                const Grid& g, const SchemeConfig& sc,
                                double A_lo, double A_hi);

// Critical sweep speed at fixed (A, eta): most negative c in [c_lo, c_hi]
// (c_hi <= 0) for which the release still blocks. Success holds at c near
// zero, failure at fast sweeps, so the bisection runs on c directly.
SearchResult critical_speed(const ModelParams& p, double A, double eta,
                            const Grid& g, const SchemeConfig& sc, double c_lo,
                            double c_hi);

}  // namespace sit
