#include "sit/solver.hpp"

#include <cmath>
#include <sstream>

#include "sit/errors.hpp"

namespace sit {

namespace {

// Steps per snapshot so that steps * dt == snapshot_every exactly.
int steps_per_snapshot(double snapshot_every, double dt_raw) {
  const int n = static_cast<int>(std::ceil(snapshot_every / dt_raw - 1e-12));
  return n < 1 ? 1 : n;
}

int snapshot_count(const SchemeConfig& sc) {
  const double ratio = sc.t_end / sc.snapshot_every;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
    throw ConfigError("t_end must be an integer multiple of snapshot_every");
  return static_cast<int>(rounded);
}

// Clips negatives in place; returns clipped mass (sum of overshoot * dx).
// Throws when any single clipped value exceeds 1e-8 of the component's
// current max.
double clip_negative(Eigen::ArrayXd& u, double dx, const char* name) {
  const double worst = -u.minCoeff();
  if (worst <= 0.0) return 0.0;
  const double scale = u.maxCoeff();
  if (worst > 1e-8 * std::max(scale, 1e-300)) {
    std::ostringstream os;
    os << "positivity clip on " << name << " exceeds threshold: worst value "
       << -worst << " vs component max " << scale << " (reduce dt)";
    throw NumericalError(os.str());
  }
  const double neg = -(u.min(0.0)).sum() * dx;
  u = u.max(0.0);
  return neg;
}

void check_init(const StateField& s, const ModelParams& p, const Grid& g) {
  if (s.E.size() != g.n_cells || s.F.size() != g.n_cells ||
      s.M.size() != g.n_cells || s.Ms.size() != g.n_cells)
    throw ConfigError("initial state size does not match grid");
  if (s.E.minCoeff() < 0 || s.F.minCoeff() < 0 || s.M.minCoeff() < 0 ||
      s.Ms.minCoeff() < 0)
    throw ConfigError("initial state must be nonnegative");
  if (s.E.maxCoeff() > p.K * (1.0 + 1e-12))
    throw ConfigError("initial E must not exceed K");
}

}  // namespace

double reaction_rate_bound(const ModelParams& p) {
  const double F_cap = p.r * p.nu_E * p.K / p.mu_F;
  const double row_E = p.beta * F_cap / p.K + (p.nu_E + p.mu_E) + p.beta;
  const double row_F = p.r * p.nu_E + p.mu_F;
  const double row_M = (1.0 - p.r) * p.nu_E + p.mu_M;
  const double row_Ms = p.mu_s;
  return std::max(std::max(row_E, row_F), std::max(row_M, row_Ms));
}

double scalar_rate_bound(const ScalarParams& p) {
  // |d/du [mf(u,lam) g(u)]| <= max|g'| + max|mf_u| g <= beta/delta * 5/4,
  // using u lam / (u + lam)^2 <= 1/4 and g(u) <= (beta/delta) u.
  return 1.25 * p.beta / p.delta + p.mu;
}

double compute_dt(const ModelParams& p, const Grid& g, const SchemeConfig& sc) {
  p.validate();
  g.validate();
  sc.validate();
  const double dx = g.dx();
  const double dt_diff = dx * dx / (2.0 * p.D);
  const double dt_reac = sc.cfl_reaction_cap / reaction_rate_bound(p);
  return sc.dt_safety * std::min(dt_diff, dt_reac);
}

double compute_dt_scalar(const ScalarParams& p, const Grid& g,
                         const SchemeConfig& sc) {
  p.validate();
  g.validate();
  sc.validate();
  const double dx = g.dx();
  const double dt_diff = dx * dx / 2.0;  // unit diffusion
  const double dt_reac = sc.cfl_reaction_cap / scalar_rate_bound(p);
  return sc.dt_safety * std::min(dt_diff, dt_reac);
}

DiffusionOperator::DiffusionOperator(int n, double nu) : nu_(nu) {
  // Rows of I - nu L with mirror-ghost zero flux:
  //   first:    (1 + 2nu) u0 - 2nu u1
  //   interior: -nu u_{i-1} + (1 + 2nu) u_i - nu u_{i+1}
  //   last:     -2nu u_{n-2} + (1 + 2nu) u_{n-1}
  upper_ratio_.resize(n);
  inv_diag_.resize(n);
  const double b = 1.0 + 2.0 * nu;
  double denom = b;
  inv_diag_[0] = 1.0 / denom;
  upper_ratio_[0] = -2.0 * nu / denom;
  for (int i = 1; i < n - 1; ++i) {
    denom = b - (-nu) * upper_ratio_[i - 1];
    inv_diag_[i] = 1.0 / denom;
    upper_ratio_[i] = -nu / denom;
  }
  denom = b - (-2.0 * nu) * upper_ratio_[n - 2];
  inv_diag_[n - 1] = 1.0 / denom;
  upper_ratio_[n - 1] = 0.0;
}

void DiffusionOperator::apply_inverse(Eigen::ArrayXd& u) const {
  const int n = static_cast<int>(u.size());
  const double nu = nu_;
  u[0] *= inv_diag_[0];
  for (int i = 1; i < n - 1; ++i)
    u[i] = (u[i] + nu * u[i - 1]) * inv_diag_[i];
  u[n - 1] = (u[n - 1] + 2.0 * nu * u[n - 2]) * inv_diag_[n - 1];
  for (int i = n - 2; i >= 0; --i) u[i] -= upper_ratio_[i] * u[i + 1];
}

void implicit_diffusion_step(Eigen::ArrayXd& u, double nu) {
  DiffusionOperator op(static_cast<int>(u.size()), nu);
  op.apply_inverse(u);
}

namespace {

// Shared core for the full system; prescribed != nullptr switches Ms from
// evolved to imposed.
Trajectory run_system(
    const ModelParams& p, const ReleaseProfile* rp, const Grid& g,
    const SchemeConfig& sc, const StateField& init,
    const std::function<void(double, const Eigen::ArrayXd&, Eigen::ArrayXd&)>*
        prescribed) {
  p.validate();
  if (rp) rp->validate();
  check_init(init, p, g);
  const int n = g.n_cells;
  const double dx = g.dx();
  const double dt_raw = compute_dt(p, g, sc);
  const int spp = steps_per_snapshot(sc.snapshot_every, dt_raw);
  const double dt = sc.snapshot_every / spp;
  const int n_snaps = snapshot_count(sc);
  const double nu = p.D * dt / (dx * dx);
  const DiffusionOperator diffuse(n, nu);
  const Eigen::ArrayXd x = g.nodes();

  Trajectory traj;
  traj.grid = g;
  traj.dt = dt;
  traj.snapshots.reserve(n_snaps + 1);

  StateField s = init;
  s.t = init.t;
  if (prescribed) (*prescribed)(s.t, x, s.Ms);
  traj.snapshots.push_back(s);
  traj.diagnostics.push_back({s.t, 0.0, dt});

  Eigen::ArrayXd dE(n), dF(n), dM(n), lam(n);
  for (int k = 0; k < n_snaps; ++k) {
    double clipped = 0.0;
    for (int j = 0; j < spp; ++j) {
      const double t_old = init.t + sc.snapshot_every * k + dt * j;
      if (rp)
        lambda_at(*rp, t_old, x, lam);
      else
        lam.setZero();
      reaction(s.E, s.F, s.M, s.Ms, p, dE, dF, dM);

      s.E += dt * dE;
      s.F += dt * dF;
      s.M += dt * dM;
      diffuse.apply_inverse(s.F);
      diffuse.apply_inverse(s.M);
      if (prescribed) {
        (*prescribed)(t_old + dt, x, s.Ms);
      } else {
        s.Ms += dt * (lam - p.mu_s * s.Ms);
        diffuse.apply_inverse(s.Ms);
        clipped += clip_negative(s.Ms, dx, "Ms");
      }
      clipped += clip_negative(s.E, dx, "E");
      clipped += clip_negative(s.F, dx, "F");
      clipped += clip_negative(s.M, dx, "M");
    }
    s.t = init.t + sc.snapshot_every * (k + 1);
    traj.snapshots.push_back(s);
    traj.diagnostics.push_back({s.t, clipped, dt});
  }
  return traj;
}

}  // namespace

StateField front_initial_state(const ModelParams& p, const ReleaseProfile& rp,
                               const Grid& g) {
  const Equilibrium eq = equilibrium(p);
  StateField s = StateField::zero(g);
  const Eigen::ArrayXd x = g.nodes();
  s.E = (x < 0.0).select(eq.E_star, s.E);
  s.F = (x < 0.0).select(eq.F_star, s.F);
  s.M = (x < 0.0).select(eq.M_star, s.M);
  if (rp.mode != ReleaseMode::off && rp.A > 0.0) {
    const MsSteadyProfile carpet = ms_steady_profile(rp.A, rp.eta, rp.c, p);
    for (Eigen::Index i = 0; i < x.size(); ++i)
      s.Ms[i] = carpet.value(x[i]);
  }
  return s;
}

Trajectory simulate(const ModelParams& p, const ReleaseProfile& rp,
                    const Grid& g, const SchemeConfig& sc,
                    const StateField& init) {
  return run_system(p, &rp, g, sc, init, nullptr);
}

Trajectory simulate_prescribed_ms(
    const ModelParams& p, const Grid& g, const SchemeConfig& sc,
    const StateField& init,
    const std::function<void(double, const Eigen::ArrayXd&, Eigen::ArrayXd&)>&
        control) {
  return run_system(p, nullptr, g, sc, init, &control);
}

Trajectory simulate_ms_only(const ModelParams& p, const ReleaseProfile& rp,
                            const Grid& g, const SchemeConfig& sc,
                            const Eigen::ArrayXd& ms_init) {
  p.validate();
  rp.validate();
  g.validate();
  if (ms_init.size() != g.n_cells)
    throw ConfigError("Ms initial data size does not match grid");
  if (ms_init.minCoeff() < 0)
    throw ConfigError("Ms initial data must be nonnegative");
  const int n = g.n_cells;
  const double dx = g.dx();
  const double dt_raw = compute_dt(p, g, sc);
  const int spp = steps_per_snapshot(sc.snapshot_every, dt_raw);
  const double dt = sc.snapshot_every / spp;
  const int n_snaps = snapshot_count(sc);
  const DiffusionOperator diffuse(n, p.D * dt / (dx * dx));
  const Eigen::ArrayXd x = g.nodes();

  Trajectory traj;
  traj.grid = g;
  traj.dt = dt;
  StateField s = StateField::zero(g);
  s.Ms = ms_init;
  traj.snapshots.push_back(s);
  traj.diagnostics.push_back({0.0, 0.0, dt});

  Eigen::ArrayXd lam(n);
  for (int k = 0; k < n_snaps; ++k) {
    double clipped = 0.0;
    for (int j = 0; j < spp; ++j) {
      const double t_old = sc.snapshot_every * k + dt * j;
      lambda_at(rp, t_old, x, lam);
      s.Ms += dt * (lam - p.mu_s * s.Ms);
      diffuse.apply_inverse(s.Ms);
      clipped += clip_negative(s.Ms, dx, "Ms");
    }
    s.t = sc.snapshot_every * (k + 1);
    traj.snapshots.push_back(s);
    traj.diagnostics.push_back({s.t, clipped, dt});
  }
  return traj;
}

ScalarTrajectory simulate_scalar(const ScalarParams& p,
                                 const ReleaseProfile& rp, const Grid& g,
                                 const SchemeConfig& sc,
                                 const Eigen::ArrayXd& u_init) {
  p.validate();
  rp.validate();
  g.validate();
  if (u_init.size() != g.n_cells)
    throw ConfigError("scalar initial data size does not match grid");
  if (u_init.minCoeff() < 0)
    throw ConfigError("scalar initial data must be nonnegative");
  const int n = g.n_cells;
  const double dx = g.dx();
  const double dt_raw = compute_dt_scalar(p, g, sc);
  const int spp = steps_per_snapshot(sc.snapshot_every, dt_raw);
  const double dt = sc.snapshot_every / spp;
  const int n_snaps = snapshot_count(sc);
  const DiffusionOperator diffuse(n, dt / (dx * dx));  // D = 1
  const Eigen::ArrayXd x = g.nodes();

  ScalarTrajectory traj;
  traj.grid = g;
  traj.dt = dt;
  Eigen::ArrayXd u = u_init;
  traj.times.push_back(0.0);
  traj.u.push_back(u);
  traj.diagnostics.push_back({0.0, 0.0, dt});

  Eigen::ArrayXd lam(n), du(n);
  for (int k = 0; k < n_snaps; ++k) {
    double clipped = 0.0;
    for (int j = 0; j < spp; ++j) {
      const double t_old = sc.snapshot_every * k + dt * j;
      lambda_at(rp, t_old, x, lam);
      for (int i = 0; i < n; ++i) du[i] = scalar_reaction(u[i], lam[i], p);
      u += dt * du;
      diffuse.apply_inverse(u);
      clipped += clip_negative(u, dx, "u");
    }
    traj.times.push_back(sc.snapshot_every * (k + 1));
    traj.u.push_back(u);
    traj.diagnostics.push_back({sc.snapshot_every * (k + 1), clipped, dt});
  }
  return traj;
}

}  // namespace sit
