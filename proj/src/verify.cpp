#include "sit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "sit/errors.hpp"
#include "sit/solver.hpp"

namespace sit {

namespace {

constexpr double kSlopeTolScale = 1e-4;  // absorbs one-sided stencil bias
constexpr double kValueTolScale = 1e-6;
constexpr double kKinkProbe = 1e-9;  // offset when sampling one-sided limits

using Profile = std::function<double(double)>;

struct Derivs {
  double d1 = 0.0;
  double d2 = 0.0;
};

// side = 0: 6th-order central; side = +1/-1: 2nd-order one-sided stencils
// opening rightward/leftward. The high central order is what lets h sit
// around 1e-2 profile-decay-lengths: value rounding noise in the profiles
// enters the second derivative as O(eps |f| / h^2), so h must be large,
// while the h^6 truncation stays far below the residual tolerance there.
Derivs fd_derivs(const Profile& f, double z, double h, int side) {
  Derivs d;
  if (side == 0) {
    const double f3m = f(z - 3 * h), f2m = f(z - 2 * h), f1m = f(z - h);
    const double f0 = f(z);
    const double f1p = f(z + h), f2p = f(z + 2 * h), f3p = f(z + 3 * h);
    d.d1 = (f3p - 9 * f2p + 45 * f1p - 45 * f1m + 9 * f2m - f3m) / (60 * h);
    d.d2 = (2 * f3p - 27 * f2p + 270 * f1p - 490 * f0 + 270 * f1m -
            27 * f2m + 2 * f3m) /
           (180 * h * h);
  } else {
    const double s = side > 0 ? 1.0 : -1.0;
    const double f0 = f(z), f1 = f(z + s * h), f2 = f(z + 2 * s * h);
    const double f3 = f(z + 3 * s * h);
    d.d1 = s * (-3 * f0 + 4 * f1 - f2) / (2 * h);
    d.d2 = (2 * f0 - 5 * f1 + 4 * f2 - f3) / (h * h);
  }
  return d;
}

double nearest_kink_distance(const std::vector<double>& kinks, double z,
                             double* kink_out) {
  double best = std::numeric_limits<double>::infinity();
  for (double k : kinks) {
    if (std::abs(z - k) < best) {
      best = std::abs(z - k);
      *kink_out = k;
    }
  }
  return best;
}

struct EngineInput {
  bool upper = true;
  double h = 0.0;
  double tol = 0.0;
  std::vector<double> kinks;  // union over all profiles
  // Profiles differenced by the stencils, with display names.
  std::vector<std::pair<std::string, Profile>> profiles;
  // Equation residuals from per-profile (value, d1, d2) triples at a row.
  struct Eval {
    double v, d1, d2;
  };
  std::vector<std::pair<std::string,
                        std::function<double(double z, const std::vector<Eval>&)>>>
      equations;
  // Kink list per profile index for the jump checks.
  std::vector<std::vector<double>> profile_kinks;
};

void check_kinks(const EngineInput& in, WaveVerifyReport& rep) {
  for (size_t pi = 0; pi < in.profiles.size(); ++pi) {
    const Profile& f = in.profiles[pi].second;
    for (double k : in.profile_kinks[pi]) {
      KinkCheck kc;
      kc.profile = in.profiles[pi].first;
      kc.z = k;
      const double h = in.h;
      const double lv = f(k - kKinkProbe), rv = f(k + kKinkProbe);
      kc.value_gap = rv - lv;
      kc.left_slope =
          (3 * f(k - kKinkProbe) - 4 * f(k - kKinkProbe - h) +
           f(k - kKinkProbe - 2 * h)) /
          (2 * h);
      kc.right_slope =
          (-3 * f(k + kKinkProbe) + 4 * f(k + kKinkProbe + h) -
           f(k + kKinkProbe + 2 * h)) /
          (2 * h);
      const double sscale =
          std::max({1.0, std::abs(kc.left_slope), std::abs(kc.right_slope)});
      const double jump = kc.left_slope - kc.right_slope;
      // Upper barriers may only bend downward across a kink (left slope
      // exceeds right slope); lower barriers the reverse.
      kc.slope_ok = in.upper ? jump >= -kSlopeTolScale * sscale
                             : jump <= kSlopeTolScale * sscale;
      const double vscale = std::max({1.0, std::abs(lv), std::abs(rv)});
      kc.value_ok = std::abs(kc.value_gap) <= kValueTolScale * vscale;
      rep.kinks.push_back(kc);
    }
  }
}

WaveVerifyReport run_engine(const EngineInput& in,
                            const std::vector<double>& grid) {
  WaveVerifyReport rep;
  rep.upper = in.upper;
  rep.tol = in.tol;
  rep.h = in.h;
  rep.equations.resize(in.equations.size());
  for (size_t e = 0; e < in.equations.size(); ++e)
    rep.equations[e].name = in.equations[e].first;

  const double sign = in.upper ? 1.0 : -1.0;  // flips min/max bookkeeping
  std::vector<EngineInput::Eval> evals(in.profiles.size());
  for (double z : grid) {
    double kink = 0.0;
    const double dist = nearest_kink_distance(in.kinks, z, &kink);
    if (dist < 0.5 * in.h) {
      for (auto& eq : rep.equations) ++eq.on_kink_count;
      continue;
    }
    const bool band = dist <= 3.0 * in.h;  // central stencil footprint
    const int side = band ? (z > kink ? +1 : -1) : 0;
    for (size_t pi = 0; pi < in.profiles.size(); ++pi) {
      const auto d = fd_derivs(in.profiles[pi].second, z, in.h, side);
      evals[pi] = {in.profiles[pi].second(z), d.d1, d.d2};
    }
    for (size_t e = 0; e < in.equations.size(); ++e) {
      const double res = in.equations[e].second(z, evals);
      EquationCheck& chk = rep.equations[e];
      ResidualExtreme& ext = band ? chk.worst_band : chk.worst_interior;
      (band ? chk.band_count : chk.interior_count)++;
      // Track the most violating residual: most negative for an upper
      // barrier, most positive for a lower one.
      if (std::isnan(ext.z) || sign * res < sign * ext.value) {
        ext.value = res;
        ext.z = z;
      }
    }
  }
  check_kinks(in, rep);

  bool ok = true;
  for (const auto& eq : rep.equations) {
    if (eq.interior_count == 0) continue;
    ok = ok && (in.upper ? eq.worst_interior.value >= -in.tol
                         : eq.worst_interior.value <= in.tol);
  }
  for (const auto& kc : rep.kinks) ok = ok && kc.slope_ok && kc.value_ok;
  rep.pass = ok;
  return rep;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string WaveVerifyReport::to_text() const {
  std::ostringstream os;
  os << (upper ? "upper" : "lower") << " barrier check, tol " << fmt(tol)
     << ", stencil h " << fmt(h) << "\n";
  for (const auto& eq : equations) {
    os << "  " << eq.name << ": worst interior residual "
       << fmt(eq.worst_interior.value) << " at z=" << fmt(eq.worst_interior.z)
       << " (" << eq.interior_count << " rows)";
    if (eq.band_count > 0)
      os << "; kink-band worst " << fmt(eq.worst_band.value) << " at z="
         << fmt(eq.worst_band.z) << " (" << eq.band_count
         << " rows, 2nd-order stencil, informational)";
    if (eq.on_kink_count > 0) os << "; " << eq.on_kink_count << " on-kink skipped";
    os << "\n";
  }
  for (const auto& kc : kinks) {
    os << "  " << kc.profile << " kink at z=" << fmt(kc.z) << ": slopes "
       << fmt(kc.left_slope) << " | " << fmt(kc.right_slope)
       << (kc.slope_ok ? " (ok)" : " (VIOLATION)") << ", value gap "
       << fmt(kc.value_gap) << (kc.value_ok ? " (ok)" : " (VIOLATION)")
       << "\n";
  }
  os << (pass ? "  PASS" : "  FAIL") << "\n";
  return os.str();
}

std::vector<double> jittered_grid(double z_min, double z_max, int n,
                                  std::uint64_t seed) {
  if (n < 2 || !(z_max > z_min))
    throw ConfigError("jittered_grid: need n >= 2 and z_max > z_min");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.4, 0.4);
  const double dz = (z_max - z_min) / (n - 1);
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = z_min + (i + jitter(rng)) * dz;
  return g;
}

WaveVerifyReport verify_supersolution(const SystemSuperSolution& ss,
                                      const std::vector<double>& grid,
                                      double tol) {
  const ModelParams& p = ss.params;
  EngineInput in;
  in.upper = true;
  in.tol = tol;
  in.h = 5e-3 * std::max(1.0, 1.0 / ss.lambda);
  in.profiles = {{"phiE", [&ss](double z) { return ss.phi_E(z); }},
                 {"phiF", [&ss](double z) { return ss.phi_F(z); }},
                 {"phiM", [&ss](double z) { return ss.phi_M(z); }}};
  in.profile_kinks = {{ss.x_E}, {0.0}, {ss.x_M}};
  in.kinks = {ss.x_E, 0.0, ss.x_M};
  const double c = ss.c;
  in.equations = {
      {"egg",
       [&, c](double, const std::vector<EngineInput::Eval>& ev) {
         return -c * ev[0].d1 - (p.beta * ev[1].v * (1.0 - ev[0].v / p.K) -
                                 (p.nu_E + p.mu_E) * ev[0].v);
       }},
      {"female",
       [&, c](double z, const std::vector<EngineInput::Eval>& ev) {
         const double mf = mating_fraction(ev[2].v, ss.control(z), p.gamma);
         return -c * ev[1].d1 - p.D * ev[1].d2 -
                (p.r * p.nu_E * ev[0].v * mf - p.mu_F * ev[1].v);
       }},
      {"male",
       [&, c](double, const std::vector<EngineInput::Eval>& ev) {
         return -c * ev[2].d1 - p.D * ev[2].d2 -
                ((1.0 - p.r) * p.nu_E * ev[0].v - p.mu_M * ev[2].v);
       }}};
  return run_engine(in, grid);
}

WaveVerifyReport verify_supersolution(const ScalarSuperSolution& ss, double A,
                                      double eta,
                                      const std::vector<double>& grid,
                                      double tol) {
  EngineInput in;
  in.upper = true;
  in.tol = tol;
  in.h = 5e-3 * std::max(1.0, 1.0 / -ss.r_alpha);
  in.profiles = {{"w_bar", [&ss](double z) { return ss.value(z); }}};
  in.profile_kinks = {{0.0}};
  in.kinks = {0.0};
  const double c = ss.c;
  const ScalarParams p = ss.params;
  in.equations = {
      {"scalar",
       [&, c, A, eta, p](double z, const std::vector<EngineInput::Eval>& ev) {
         const double lam = z > 0.0 ? A * std::exp(-eta * z) : 0.0;
         return -c * ev[0].d1 - ev[0].d2 - scalar_reaction(ev[0].v, lam, p);
       }}};
  return run_engine(in, grid);
}

WaveVerifyReport verify_supersolution(const ScalarSuperSolution& ss,
                                      const std::vector<double>& grid,
                                      double tol) {
  return verify_supersolution(ss, ss.A_min, ss.eta_max, grid, tol);
}

WaveVerifyReport verify_subsolution(const SystemSubSolution& ss,
                                    const std::vector<double>& grid,
                                    double tol) {
  const ModelParams& p = ss.params;
  EngineInput in;
  in.upper = false;
  in.tol = tol;
  in.h = 5e-3 * std::max(1.0, 1.0 / ss.lambda_F_plus);
  in.profiles = {{"phiE", [&ss](double z) { return ss.phi_E(z); }},
                 {"phiF", [&ss](double z) { return ss.phi_F(z); }},
                 {"phiM", [&ss](double z) { return ss.phi_M(z); }}};
  in.profile_kinks = {{0.0}, {ss.y_F}, {0.0}};
  in.kinks = {ss.y_F, 0.0};
  const double c = ss.c;
  in.equations = {
      {"egg",
       [&, c](double, const std::vector<EngineInput::Eval>& ev) {
         return -c * ev[0].d1 - (p.beta * ev[1].v * (1.0 - ev[0].v / p.K) -
                                 (p.nu_E + p.mu_E) * ev[0].v);
       }},
      {"female",
       // Behind the sweep there is no sterile control, so the mating
       // fraction is 1 wherever males persist (and the source vanishes
       // with phiE ahead of the front).
       [&, c](double, const std::vector<EngineInput::Eval>& ev) {
         const double mf = mating_fraction(ev[2].v, 0.0, p.gamma);
         return -c * ev[1].d1 - p.D * ev[1].d2 -
                (p.r * p.nu_E * ev[0].v * mf - p.mu_F * ev[1].v);
       }},
      {"male",
       [&, c](double, const std::vector<EngineInput::Eval>& ev) {
         return -c * ev[2].d1 - p.D * ev[2].d2 -
                ((1.0 - p.r) * p.nu_E * ev[0].v - p.mu_M * ev[2].v);
       }}};
  return run_engine(in, grid);
}

WaveVerifyReport verify_subsolution(const ScalarSubSolution& ss, double c,
                                    const std::vector<double>& grid,
                                    double tol) {
  EngineInput in;
  in.upper = false;
  in.tol = tol;
  // Stencil points are kept on the integration lattice (multiples of the
  // tabulation step) so they hit stored orbit samples exactly.
  in.h = 16.0 * ss.h;
  in.profiles = {{"w_under", [&ss](double z) { return ss.value(z); }}};
  in.profile_kinks = {{ss.x_left, 0.0}};
  in.kinks = {ss.x_left, 0.0};
  const ScalarParams p = ss.params;
  in.equations = {
      {"scalar",
       [&, c, p](double, const std::vector<EngineInput::Eval>& ev) {
         return -c * ev[0].d1 - ev[0].d2 - scalar_reaction(ev[0].v, 0.0, p);
       }}};
  std::vector<double> snapped(grid.size());
  for (size_t i = 0; i < grid.size(); ++i)
    snapped[i] = std::round(grid[i] / ss.h) * ss.h;
  return run_engine(in, snapped);
}

double barrier_ordering_gap(const SystemSubSolution& lower,
                            const SystemSuperSolution& upper,
                            const std::vector<double>& grid) {
  double worst = -std::numeric_limits<double>::infinity();
  for (double z : grid) {
    worst = std::max(worst, lower.phi_E(z) - upper.phi_E(z));
    worst = std::max(worst, lower.phi_F(z) - upper.phi_F(z));
    worst = std::max(worst, lower.phi_M(z) - upper.phi_M(z));
  }
  return worst;
}

std::string OrderingReport::to_text() const {
  std::ostringstream os;
  os << "componentwise ordering check, tol " << fmt(tol) << "\n"
     << "  worst excess E " << fmt(worst_E) << ", F " << fmt(worst_F)
     << ", M " << fmt(worst_M) << ", Ms " << fmt(worst_Ms) << "\n";
  if (!worst_component.empty())
    os << "  peak violation in " << worst_component << " at t="
       << fmt(worst_t) << ", x=" << fmt(worst_x) << "\n";
  os << (pass ? "  PASS" : "  FAIL") << "\n";
  return os.str();
}

OrderingReport verify_ordering(const Trajectory& more_sterile,
                               const Trajectory& less_sterile, double tol) {
  OrderingReport rep;
  rep.tol = tol;
  if (more_sterile.snapshots.size() != less_sterile.snapshots.size() ||
      more_sterile.grid.n_cells != less_sterile.grid.n_cells)
    throw ConfigError("verify_ordering: trajectories not comparable");
  const Eigen::ArrayXd x = more_sterile.grid.nodes();
  double peak = -std::numeric_limits<double>::infinity();
  for (size_t s = 0; s < more_sterile.snapshots.size(); ++s) {
    const StateField& a = more_sterile.snapshots[s];   // more sterile
    const StateField& b = less_sterile.snapshots[s];
    const struct {
      const char* name;
      Eigen::ArrayXd diff;
      double* worst;
    } rows[] = {
        {"E", a.E - b.E, &rep.worst_E},
        {"F", a.F - b.F, &rep.worst_F},
        {"M", a.M - b.M, &rep.worst_M},
        {"Ms", b.Ms - a.Ms, &rep.worst_Ms},
    };
    for (const auto& r : rows) {
      int idx = 0;
      const double w = r.diff.maxCoeff(&idx);
      *r.worst = std::max(*r.worst, w);
      if (w > peak) {
        peak = w;
        rep.worst_component = r.name;
        rep.worst_t = a.t;
        rep.worst_x = x[idx];
      }
    }
  }
  rep.pass = std::max({rep.worst_E, rep.worst_F, rep.worst_M, rep.worst_Ms}) <=
             tol;
  return rep;
}

std::string MsBoundReport::to_text() const {
  std::ostringstream os;
  os << "sterile floor check, relative slack " << fmt(rel_tol) << ", "
     << n_checked << " samples\n"
     << "  worst relative deficit " << fmt(worst_rel_deficit) << "\n";
  if (!std::isnan(first_violation_t))
    os << "  first violation at t=" << fmt(first_violation_t) << ", x="
       << fmt(first_violation_x) << "\n";
  os << (pass ? "  PASS" : "  FAIL") << "\n";
  return os.str();
}

MsBoundReport verify_ms_bound(const ModelParams& p, double C_s, double eta,
                              double c, double A,
                              const Eigen::ArrayXd& init_Ms, const Grid& g,
                              const SchemeConfig& scheme, double rel_tol) {
  ReleaseProfile rp;
  rp.A = A;
  rp.eta = eta;
  rp.c = c;
  rp.mode = ReleaseMode::moving_exponential;
  rp.validate();
  const Trajectory traj = simulate_ms_only(p, rp, g, scheme, init_Ms);

  MsBoundReport rep;
  rep.rel_tol = rel_tol;
  const Eigen::ArrayXd x = g.nodes();
  const double floor_abs = 1e-9 * C_s;
  for (const StateField& snap : traj.snapshots) {
    for (int i = 0; i < x.size(); ++i) {
      const double z = x[i] - c * snap.t;
      if (z <= 0.0) continue;  // the floor applies ahead of the edge only
      const double bound = C_s * std::exp(-eta * z);
      const double deficit = bound - snap.Ms[i];
      ++rep.n_checked;
      rep.worst_rel_deficit =
          std::max(rep.worst_rel_deficit, deficit / bound);
      if (deficit > rel_tol * bound + floor_abs &&
          std::isnan(rep.first_violation_t)) {
        rep.first_violation_t = snap.t;
        rep.first_violation_x = x[i];
      }
    }
  }
  rep.pass = std::isnan(rep.first_violation_t);
  return rep;
}

}  // namespace sit
