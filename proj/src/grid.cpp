#include "sit/grid.hpp"

#include <cmath>
#include <sstream>

#include "sit/errors.hpp"

namespace sit {

Eigen::ArrayXd Grid::nodes() const {
  Eigen::ArrayXd x(n_cells);
  const double h = dx();
  for (int i = 0; i < n_cells; ++i) x[i] = x_min + h * i;
  x[n_cells - 1] = x_max;
  return x;
}

Grid Grid::from_spacing(double x_min, double x_max, double dx) {
  if (!(dx > 0)) throw ConfigError("grid dx must be > 0");
  if (!(x_max > x_min)) throw ConfigError("grid needs x_max > x_min");
  const double steps = (x_max - x_min) / dx;
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, steps)) {
    std::ostringstream os;
    os << "grid span " << (x_max - x_min) << " is not an integer multiple of dx "
       << dx;
    throw ConfigError(os.str());
  }
  Grid g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.n_cells = static_cast<int>(rounded) + 1;
  g.validate();
  return g;
}

void Grid::validate() const {
  if (!(x_max > x_min)) throw ConfigError("grid needs x_max > x_min");
  if (n_cells < 16) throw ConfigError("grid needs at least 16 nodes");
}

StateField StateField::zero(const Grid& g) {
  StateField s;
  s.t = 0.0;
  s.E = Eigen::ArrayXd::Zero(g.n_cells);
  s.F = Eigen::ArrayXd::Zero(g.n_cells);
  s.M = Eigen::ArrayXd::Zero(g.n_cells);
  s.Ms = Eigen::ArrayXd::Zero(g.n_cells);
  return s;
}

void SchemeConfig::validate() const {
  if (!(dt_safety > 0 && dt_safety <= 1))
    throw ConfigError("dt_safety must lie in (0, 1]");
  if (!(cfl_reaction_cap > 0)) throw ConfigError("cfl_reaction_cap must be > 0");
  if (!(t_end > 0)) throw ConfigError("t_end must be > 0");
  if (!(snapshot_every > 0 && snapshot_every <= t_end))
    throw ConfigError("snapshot_every must lie in (0, t_end]");
}

}  // namespace sit
