// Time integrator: fixed points, invariant regions, convergence order of
// the diffusion scheme, trajectory ordering, and failure reporting.
#include <doctest.h>

#include <cmath>

#include "sit/errors.hpp"
#include "sit/grid.hpp"
#include "sit/params.hpp"
#include "sit/release.hpp"
#include "sit/solver.hpp"

using namespace sit;

namespace {
const ModelParams kDefault;

ReleaseProfile release_off() {
  ReleaseProfile rp;
  rp.mode = ReleaseMode::off;
  return rp;
}

ReleaseProfile carpet(double A, double eta, double c) {
  ReleaseProfile rp;
  rp.A = A;
  rp.eta = eta;
  rp.c = c;
  rp.mode = ReleaseMode::moving_exponential;
  return rp;
}

SchemeConfig scheme(double t_end, double snapshot_every) {
  SchemeConfig sc;
  sc.t_end = t_end;
  sc.snapshot_every = snapshot_every;
  return sc;
}
}  // namespace

TEST_CASE("dt rule combines the diffusion and reaction caps") {
  const Grid g = Grid::from_spacing(-50.0, 50.0, 0.5);
  SchemeConfig sc;
  sc.dt_safety = 0.7;
  sc.cfl_reaction_cap = 0.5;
  const double expected =
      0.7 * std::min(0.25 / (2.0 * kDefault.D),
                     0.5 / reaction_rate_bound(kDefault));
  CHECK(compute_dt(kDefault, g, sc) ==
        doctest::Approx(expected).epsilon(1e-14));

  // The reaction bound is set by the fastest row over the invariant box.
  const double F_cap = kDefault.r * kDefault.nu_E * kDefault.K / kDefault.mu_F;
  CHECK(reaction_rate_bound(kDefault) >=
        kDefault.beta * F_cap / kDefault.K + kDefault.nu_E + kDefault.mu_E);
}

TEST_CASE("equilibrium is a fixed point of the full step") {
  const Grid g = Grid::from_spacing(-40.0, 40.0, 0.5);
  const Equilibrium eq = equilibrium(kDefault);
  StateField init = StateField::zero(g);
  init.E.setConstant(eq.E_star);
  init.F.setConstant(eq.F_star);
  init.M.setConstant(eq.M_star);

  const Trajectory traj =
      simulate(kDefault, release_off(), g, scheme(20.0, 5.0), init);
  const StateField& last = traj.snapshots.back();
  CHECK((last.E - eq.E_star).abs().maxCoeff() <= 1e-10 * eq.E_star);
  CHECK((last.F - eq.F_star).abs().maxCoeff() <= 1e-10 * eq.F_star);
  CHECK((last.M - eq.M_star).abs().maxCoeff() <= 1e-10 * eq.M_star);
  CHECK((last.Ms == 0.0).all());
}

TEST_CASE("extinction persists and the sterile field fills its carpet") {
  const Grid g = Grid::from_spacing(-100.0, 100.0, 0.5);
  const ReleaseProfile rp = carpet(600.0, 0.2, 0.0);
  const Trajectory traj =
      simulate(kDefault, rp, g, scheme(200.0, 50.0), StateField::zero(g));

  for (const StateField& s : traj.snapshots) {
    CHECK((s.E == 0.0).all());
    CHECK((s.F == 0.0).all());
    CHECK((s.M == 0.0).all());
  }
  // After ~28 sterile lifetimes the field has settled onto the steady
  // traveling profile of the release term.
  const MsSteadyProfile steady = ms_steady_profile(600.0, 0.2, 0.0, kDefault);
  const StateField& last = traj.snapshots.back();
  const Eigen::ArrayXd x = g.nodes();
  for (double probe : {-10.0, -2.0, 2.0, 10.0, 30.0}) {
    int i = 0;
    while (x[i] < probe - 1e-9) ++i;
    CHECK(last.Ms[i] ==
          doctest::Approx(steady.value(x[i])).epsilon(0.02));
  }
}

TEST_CASE("implicit diffusion reproduces the heat kernel at second order") {
  const double D = kDefault.D;
  const double t0 = 2.0, t1 = 5.0;
  const auto exact = [&](double x, double t) {
    return std::exp(-x * x / (4.0 * D * t)) / std::sqrt(4.0 * M_PI * D * t);
  };

  double err[2];
  const double dxs[2] = {0.2, 0.1};
  for (int k = 0; k < 2; ++k) {
    const Grid g = Grid::from_spacing(-40.0, 40.0, dxs[k]);
    const Eigen::ArrayXd x = g.nodes();
    Eigen::ArrayXd u(x.size());
    for (int i = 0; i < x.size(); ++i) u[i] = exact(x[i], t0);

    // dt tied to dx^2 so the first-order-in-time error scales like dx^2.
    const double dt_raw = 0.9 * dxs[k] * dxs[k] / (2.0 * D);
    const int n_steps = static_cast<int>(std::ceil((t1 - t0) / dt_raw));
    const double dt = (t1 - t0) / n_steps;
    const double nu = D * dt / (dxs[k] * dxs[k]);
    for (int s = 0; s < n_steps; ++s) implicit_diffusion_step(u, nu);

    double worst = 0.0;
    for (int i = 0; i < x.size(); ++i)
      worst = std::max(worst, std::abs(u[i] - exact(x[i], t1)));
    err[k] = worst;
  }
  const double order = std::log2(err[0] / err[1]);
  CHECK(order >= 1.8);
  CHECK(order <= 2.2);
}

TEST_CASE("aquatic density never exceeds the carrying capacity") {
  const Grid g = Grid::from_spacing(-50.0, 50.0, 0.5);
  const Equilibrium eq = equilibrium(kDefault);
  StateField init = StateField::zero(g);
  init.E.setConstant(kDefault.K);  // start pinned at capacity
  init.F.setConstant(eq.F_star);
  init.M.setConstant(eq.M_star);

  const Trajectory traj =
      simulate(kDefault, release_off(), g, scheme(40.0, 10.0), init);
  for (const StateField& s : traj.snapshots) {
    CHECK(s.E.maxCoeff() <= kDefault.K * (1.0 + 1e-8));
    CHECK(s.E.minCoeff() >= 0.0);
    CHECK(s.F.minCoeff() >= 0.0);
    CHECK(s.M.minCoeff() >= 0.0);
    CHECK(s.Ms.minCoeff() >= 0.0);
  }
  // Recorded clipping stays below the failure threshold by construction.
  for (const DiagnosticsRow& d : traj.diagnostics)
    CHECK(d.clipped_mass <= 1e-8 * kDefault.K * (g.x_max - g.x_min));
}

TEST_CASE("an oversized step trips the positivity guard") {
  const Grid g = Grid::from_spacing(-100.0, 100.0, 4.0);
  SchemeConfig sc = scheme(32.0, 32.0);
  sc.dt_safety = 1.0;
  sc.cfl_reaction_cap = 500.0;  // defeats the reaction cap; dt = dx^2/(2D)
  const Eigen::ArrayXd x = g.nodes();
  const Equilibrium eq = equilibrium(kDefault);
  StateField init = StateField::zero(g);
  init.E = (x < 0.0).select(eq.E_star, init.E);

  CHECK_THROWS_AS(simulate(kDefault, release_off(), g, sc, init),
                  NumericalError);
}

TEST_CASE("horizon must be a whole number of snapshot intervals") {
  const Grid g = Grid::from_spacing(-40.0, 40.0, 1.0);
  CHECK_THROWS_AS(simulate(kDefault, release_off(), g, scheme(12.0, 5.0),
                           StateField::zero(g)),
                  ConfigError);
}

TEST_CASE("simulation is deterministic") {
  const Grid g = Grid::from_spacing(-50.0, 100.0, 1.0);
  const ReleaseProfile rp = carpet(600.0, 0.2, -0.3);
  const StateField init = front_initial_state(kDefault, rp, g);
  const Trajectory a = simulate(kDefault, rp, g, scheme(30.0, 10.0), init);
  const Trajectory b = simulate(kDefault, rp, g, scheme(30.0, 10.0), init);
  REQUIRE(a.snapshots.size() == b.snapshots.size());
  for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
    CHECK((a.snapshots[k].E == b.snapshots[k].E).all());
    CHECK((a.snapshots[k].F == b.snapshots[k].F).all());
    CHECK((a.snapshots[k].M == b.snapshots[k].M).all());
    CHECK((a.snapshots[k].Ms == b.snapshots[k].Ms).all());
  }
}

TEST_CASE("canonical front initial state") {
  const Grid g = Grid::from_spacing(-50.0, 100.0, 0.5);
  const Eigen::ArrayXd x = g.nodes();
  const Equilibrium eq = equilibrium(kDefault);

  // Release off: equilibrium step, no sterile males anywhere.
  const StateField bare = front_initial_state(kDefault, release_off(), g);
  for (int i = 0; i < x.size(); ++i) {
    const bool wild = x[i] < 0.0;
    CHECK(bare.E[i] == (wild ? eq.E_star : 0.0));
    CHECK(bare.F[i] == (wild ? eq.F_star : 0.0));
    CHECK(bare.M[i] == (wild ? eq.M_star : 0.0));
    CHECK(bare.Ms[i] == 0.0);
  }

  // Release on: the campaign is already established, so the sterile field
  // starts on the steady traveling profile of the release term.
  const ReleaseProfile rp = carpet(600.0, 0.2, -0.3);
  const StateField armed = front_initial_state(kDefault, rp, g);
  const MsSteadyProfile steady = ms_steady_profile(600.0, 0.2, -0.3, kDefault);
  for (int i = 0; i < x.size(); i += 25)
    CHECK(armed.Ms[i] == doctest::Approx(steady.value(x[i])).epsilon(1e-12));
  CHECK((armed.E == bare.E).all());
}

TEST_CASE("trajectories stay ordered under stronger sterilization") {
  const Grid g = Grid::from_spacing(-50.0, 100.0, 0.5);
  const SchemeConfig sc = scheme(50.0, 10.0);
  const ReleaseProfile strong = carpet(600.0, 0.2, -0.3);
  const ReleaseProfile weak = carpet(300.0, 0.2, -0.3);

  const Trajectory hi =
      simulate(kDefault, strong, g, sc, front_initial_state(kDefault, strong, g));
  const Trajectory lo =
      simulate(kDefault, weak, g, sc, front_initial_state(kDefault, weak, g));

  REQUIRE(hi.snapshots.size() == lo.snapshots.size());
  const Equilibrium eq = equilibrium(kDefault);
  const double tolE = 1e-6 * eq.E_star;
  const double tolF = 1e-6 * eq.F_star;
  const double tolM = 1e-6 * eq.M_star;
  for (std::size_t k = 0; k < hi.snapshots.size(); ++k) {
    const StateField& a = hi.snapshots[k];
    const StateField& b = lo.snapshots[k];
    CHECK((a.E - b.E).maxCoeff() <= tolE);
    CHECK((a.F - b.F).maxCoeff() <= tolF);
    CHECK((a.M - b.M).maxCoeff() <= tolM);
    CHECK((b.Ms - a.Ms).maxCoeff() <= 1e-6 * a.Ms.maxCoeff());
  }
}

TEST_CASE("prescribed sterile control is imposed exactly and suppresses") {
  const Grid g = Grid::from_spacing(-20.0, 20.0, 0.5);
  const Equilibrium eq = equilibrium(kDefault);
  StateField init = StateField::zero(g);
  init.E.setConstant(eq.E_star);
  init.F.setConstant(eq.F_star);
  init.M.setConstant(eq.M_star);

  const double level = 1e9;
  const auto control = [&](double, const Eigen::ArrayXd&, Eigen::ArrayXd& ms) {
    ms.setConstant(level);
  };
  const Trajectory traj =
      simulate_prescribed_ms(kDefault, g, scheme(100.0, 25.0), init, control);
  for (const StateField& s : traj.snapshots)
    CHECK((s.Ms == level).all());
  // Mating success ~ M/level is negligible, so females only decay.
  CHECK(traj.snapshots.back().F.maxCoeff() <= 0.01 * eq.F_star);
}

TEST_CASE("sterile line alone: uniform balance is an exact steady state") {
  const Grid g = Grid::from_spacing(10.0, 110.0, 0.5);
  const double C_s = 100.0;
  const ReleaseProfile rp = carpet(C_s * kDefault.mu_s, 0.0, 0.0);
  const Eigen::ArrayXd init = Eigen::ArrayXd::Constant(g.n_cells, C_s);
  const Trajectory traj =
      simulate_ms_only(kDefault, rp, g, scheme(50.0, 10.0), init);
  for (const StateField& s : traj.snapshots)
    CHECK((s.Ms - C_s).abs().maxCoeff() <= 1e-9 * C_s);
}

TEST_CASE("scalar model: empty space stays empty, steps stay nonnegative") {
  Grid g = Grid::from_spacing(-50.0, 50.0, 0.5);
  ScalarParams sp;
  const ScalarTrajectory silent = simulate_scalar(
      sp, release_off(), g, scheme(20.0, 5.0), Eigen::ArrayXd::Zero(g.n_cells));
  for (const Eigen::ArrayXd& u : silent.u) CHECK((u == 0.0).all());

  const Eigen::ArrayXd x = g.nodes();
  Eigen::ArrayXd step(g.n_cells);
  const double u_star = scalar_equilibrium(sp);
  for (int i = 0; i < x.size(); ++i) step[i] = x[i] < 0.0 ? u_star : 0.0;
  const ScalarTrajectory run =
      simulate_scalar(sp, release_off(), g, scheme(20.0, 5.0), step);
  for (const Eigen::ArrayXd& u : run.u) {
    CHECK(u.minCoeff() >= 0.0);
    CHECK(u.maxCoeff() <= u_star * (1.0 + 1e-8));
  }
  // The front moved right: mass is strictly larger than at the start.
  CHECK(run.u.back().sum() > step.sum());
}
