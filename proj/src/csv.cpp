#include "sit/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sit/errors.hpp"

namespace sit {

namespace {

// %.17g is the shortest fixed format that round-trips every finite double.
void append_number(std::string& out, double v) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  out.append(buf, static_cast<std::size_t>(n));
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot open for writing: " + path);
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!os) throw ConfigError("write failed: " + path);
}

double parse_cell(const std::string& cell, const std::string& path) {
  const char* b = cell.data();
  const char* e = b + cell.size();
  double v = 0.0;
  const auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc{} || res.ptr != e)
    throw ConfigError("malformed numeric cell '" + cell + "' in " + path);
  return v;
}

}  // namespace

void write_csv(const std::string& path, const CsvTable& table) {
  const std::size_t ncol = table.header.size();
  if (ncol == 0 || table.columns.size() != ncol)
    throw ConfigError("csv table header/column mismatch: " + path);
  const std::size_t nrow = table.rows();
  for (const auto& c : table.columns)
    if (c.size() != nrow) throw ConfigError("ragged csv columns: " + path);

  std::string out;
  out.reserve(32 * ncol * (nrow + 1));
  for (std::size_t j = 0; j < ncol; ++j) {
    if (j) out.push_back(',');
    out += table.header[j];
  }
  out.push_back('\n');
  for (std::size_t i = 0; i < nrow; ++i) {
    for (std::size_t j = 0; j < ncol; ++j) {
      if (j) out.push_back(',');
      append_number(out, table.columns[j][i]);
    }
    out.push_back('\n');
  }
  write_text(path, out);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("empty csv: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();

  CsvTable t;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(cell);
  }
  t.columns.assign(t.header.size(), {});

  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t start = 0, col = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string cell = line.substr(
          start, comma == std::string::npos ? std::string::npos
                                            : comma - start);
      if (col >= t.columns.size())
        throw ConfigError("row wider than header in " + path);
      t.columns[col].push_back(parse_cell(cell, path));
      ++col;
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (col != t.columns.size())
      throw ConfigError("row narrower than header in " + path);
  }
  return t;
}

void write_snapshots_csv(const std::string& path, const Trajectory& traj) {
  const Eigen::ArrayXd x = traj.grid.nodes();
  std::string out = "t,x,E,F,M,Ms\n";
  out.reserve(out.size() +
              40 * 6 * traj.snapshots.size() * static_cast<size_t>(x.size()));
  for (const StateField& s : traj.snapshots) {
    for (int i = 0; i < x.size(); ++i) {
      append_number(out, s.t);
      out.push_back(',');
      append_number(out, x[i]);
      out.push_back(',');
      append_number(out, s.E[i]);
      out.push_back(',');
      append_number(out, s.F[i]);
      out.push_back(',');
      append_number(out, s.M[i]);
      out.push_back(',');
      append_number(out, s.Ms[i]);
      out.push_back('\n');
    }
  }
  write_text(path, out);
}

void write_scalar_snapshots_csv(const std::string& path,
                                const ScalarTrajectory& traj) {
  const Eigen::ArrayXd x = traj.grid.nodes();
  std::string out = "t,x,u\n";
  for (std::size_t k = 0; k < traj.u.size(); ++k) {
    for (int i = 0; i < x.size(); ++i) {
      append_number(out, traj.times[k]);
      out.push_back(',');
      append_number(out, x[i]);
      out.push_back(',');
      append_number(out, traj.u[k][i]);
      out.push_back('\n');
    }
  }
  write_text(path, out);
}

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRow>& rows) {
  std::string out = "t,clipped_mass,dt\n";
  for (const DiagnosticsRow& r : rows) {
    append_number(out, r.t);
    out.push_back(',');
    append_number(out, r.clipped_mass);
    out.push_back(',');
    append_number(out, r.dt);
    out.push_back('\n');
  }
  write_text(path, out);
}

void write_front_csv(const std::string& path, const FrontTrajectory& ft) {
  std::string out = "t,front_x\n";
  for (std::size_t i = 0; i < ft.times.size(); ++i) {
    append_number(out, ft.times[i]);
    out.push_back(',');
    append_number(out, ft.positions[i]);
    out.push_back('\n');
  }
  write_text(path, out);
}

void write_profiles_csv(const std::string& path, const std::vector<double>& x,
                        const std::vector<double>& phiE,
                        const std::vector<double>& phiF,
                        const std::vector<double>& phiM,
                        const std::vector<double>& phi_control) {
  CsvTable t;
  t.header = {"x", "phiE", "phiF", "phiM", "phi_control"};
  t.columns = {x, phiE, phiF, phiM, phi_control};
  write_csv(path, t);
}

}  // namespace sit
