// Named batch experiments driven by one config file. Each runner writes its
// CSV/text artifacts under cfg.output_dir, returns a report, and flags
// whether every scientific check it performed passed.
#pragma once

#include <string>

#include "sit/config.hpp"

namespace sit {

struct RunReport {
  bool pass = true;
  std::string text;  // also written to <output_dir>/report.txt
};

// Worker-count resolution: an explicit positive CLI value wins, then the
// SITWAVE_WORKERS environment variable, then 1.
int resolve_workers(int cli_workers);

// One simulation of the configured model/release; emits snapshots.csv,
// diagnostics.csv, front.csv and the outcome classification.
RunReport run_simulate(const ExperimentConfig& cfg);

// The four canonical scenarios (release off; A=600, eta=0.2 with
// c in {0, -0.3, -0.5}) in subdirectories a/ b/ c/ d/ plus summary
// classifications. A scenario failure is recorded and rethrown after the
// others complete. Uses the domain [-260, 300] unless the config sets an
// explicit grid (the sweeping scenarios park the front near x = -200).
RunReport run_figure1(const ExperimentConfig& cfg, int workers);

// Analytic minimal invasion speed vs the measured front slope of an
// uncontrolled run; passes when they agree within 10%.
RunReport run_speed(const ExperimentConfig& cfg);

// Consolidated barrier-construction checks at the configured sweep speed:
// residual verification for all four constructions, root identities, the
// energy identity, barrier ordering, the sterile floor lemma, the
// sandwich dynamics, and the end-to-end suppression run. Also exports the
// system profiles as CSV.
RunReport run_verify(const ExperimentConfig& cfg);

// Critical-amplitude or critical-speed bisection per cfg.kind; emits the
// bracket history as text and CSV.
RunReport run_search(const ExperimentConfig& cfg);

// Dispatch on cfg.kind. Prints the report text to stdout.
RunReport run_experiment(const ExperimentConfig& cfg, int workers = 0);

}  // namespace sit
