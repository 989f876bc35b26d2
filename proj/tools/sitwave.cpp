// sitwave: traveling-wave analysis and release-strategy experiments for the
// sterile-insect mosquito model.
//
//   sitwave <simulate|figure1|speed|verify|search> --config cfg.json
//           [--out dir] [--workers n]
//
// Exit codes: 0 all checks passed, 1 a scientific check failed,
// 2 configuration error, 3 numerical failure.
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "sit/config.hpp"
#include "sit/errors.hpp"
#include "sit/experiments.hpp"

namespace {

// The `search` subcommand accepts either search kind; the config's
// experiment field decides which parameter is bisected.
bool subcommand_matches(const std::string& name, sit::ExperimentKind kind) {
  using sit::ExperimentKind;
  if (name == "simulate") return kind == ExperimentKind::simulate;
  if (name == "figure1") return kind == ExperimentKind::figure1;
  if (name == "speed") return kind == ExperimentKind::speed;
  if (name == "verify") return kind == ExperimentKind::verify_constructions;
  if (name == "search")
    return kind == ExperimentKind::search_amplitude ||
           kind == ExperimentKind::search_speed;
  return false;
}

sit::ExperimentKind default_kind(const std::string& name) {
  using sit::ExperimentKind;
  if (name == "figure1") return ExperimentKind::figure1;
  if (name == "speed") return ExperimentKind::speed;
  if (name == "verify") return ExperimentKind::verify_constructions;
  return ExperimentKind::simulate;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Traveling-wave toolkit for mosquito control by moving sterile-male "
      "releases"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int workers = 0;

  const char* names[] = {"simulate", "figure1", "speed", "verify", "search"};
  const char* blurbs[] = {
      "run one configured simulation and classify the outcome",
      "run the four canonical release scenarios",
      "analytic minimal invasion speed vs measured front slope",
      "verify the wave barrier constructions end to end",
      "bisect for a critical release amplitude or sweep speed"};
  for (int i = 0; i < 5; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], blurbs[i]);
    sub->add_option("--config", config_path, "JSON config file")
        ->required();
    sub->add_option("--out", out_dir, "output directory (overrides config)");
    sub->add_option("--workers", workers,
                    "max concurrent scenario/probe workers");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string sub_name = app.get_subcommands().front()->get_name();

  try {
    sit::ExperimentConfig cfg = sit::load_config(config_path);
    if (cfg.kind_explicit) {
      if (!subcommand_matches(sub_name, cfg.kind))
        throw sit::ConfigError("config experiment '" + to_string(cfg.kind) +
                               "' does not match subcommand '" + sub_name +
                               "'");
    } else {
      if (sub_name == "search")
        throw sit::ConfigError(
            "the search subcommand needs the config to name "
            "search_amplitude or search_speed");
      cfg.kind = default_kind(sub_name);
    }
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    cfg.validate();

    const sit::RunReport rep =
        sit::run_experiment(cfg, sit::resolve_workers(workers));
    return rep.pass ? 0 : 1;
  } catch (const sit::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const sit::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const sit::ScientificError& e) {
    std::fprintf(stderr, "scientific check failed: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
