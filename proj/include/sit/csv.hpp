// Deterministic CSV emission and parsing. All numeric output is printed
// with %.17g in the C locale and LF line endings, so identical data produces
// byte-identical files and every finite double round-trips exactly.
#pragma once

#include <string>
#include <vector>

#include "sit/front.hpp"
#include "sit/grid.hpp"

namespace sit {

// Column-major table of doubles with a named header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;  // all the same length

  std::size_t rows() const { return columns.empty() ? 0 : columns[0].size(); }
};

// Writes the table; throws ConfigError on I/O failure or ragged columns.
void write_csv(const std::string& path, const CsvTable& table);

// Reads a table written by write_csv (or any numeric CSV with a header
// row). inf/-inf/nan cells are accepted. Throws ConfigError on malformed
// input.
CsvTable read_csv(const std::string& path);

// Long-format trajectory dump: one row per (snapshot, node).
// Schema: t,x,E,F,M,Ms
void write_snapshots_csv(const std::string& path, const Trajectory& traj);

// Schema: t,x,u
void write_scalar_snapshots_csv(const std::string& path,
                                const ScalarTrajectory& traj);

// Schema: t,clipped_mass,dt
void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRow>& rows);

// Schema: t,front_x  (front_x is -inf when the field is below threshold)
void write_front_csv(const std::string& path, const FrontTrajectory& ft);

// Wave-profile export. Schema: x,phiE,phiF,phiM,phi_control
void write_profiles_csv(const std::string& path, const std::vector<double>& x,
                        const std::vector<double>& phiE,
                        const std::vector<double>& phiF,
                        const std::vector<double>& phiM,
                        const std::vector<double>& phi_control);

}  // namespace sit
