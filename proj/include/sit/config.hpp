// JSON run configuration: one file per run, Table-style model defaults,
// strict validation (unknown keys are rejected so typos cannot silently
// fall back to defaults).
#pragma once

#include <cstdint>
#include <string>

#include "sit/grid.hpp"
#include "sit/params.hpp"
#include "sit/release.hpp"

namespace sit {

enum class ExperimentKind {
  simulate,
  figure1,
  speed,
  verify_constructions,
  search_amplitude,
  search_speed
};

std::string to_string(ExperimentKind k);
ExperimentKind experiment_kind_from_string(const std::string& s);

struct SearchConfig {
  double lo = 0.0;
  double hi = 0.0;
};

struct ExperimentConfig {
  ModelParams model;
  ScalarParams scalar;
  Grid grid{-100.0, 300.0, 1601};  // dx = 0.25
  SchemeConfig scheme;
  ReleaseProfile release;  // defaults: A=600, eta=0.2, c=-0.3, mode=off
  ExperimentKind kind = ExperimentKind::simulate;
  std::string output_dir = "out";
  std::uint64_t seed = 12345;
  SearchConfig search;  // required for the two search kinds
  bool has_search = false;
  bool grid_explicit = false;  // true when the config file sets a grid block
  bool kind_explicit = false;  // true when the config file names the kind

  // Cross-field checks for the chosen kind; throws ConfigError.
  void validate() const;
};

// Parses a JSON config file. Missing blocks take the defaults above;
// unknown keys anywhere are a ConfigError. The grid block is given as
// { "x_min": .., "x_max": .., "dx": .. }.
ExperimentConfig load_config(const std::string& path);

// Same, from an in-memory JSON string (used by tests).
ExperimentConfig parse_config(const std::string& json_text);

}  // namespace sit
