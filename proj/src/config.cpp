#include "sit/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sit/errors.hpp"

namespace sit {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const char* block,
                         const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      std::ostringstream os;
      os << "unknown key '" << it.key() << "' in " << block << " block";
      throw ConfigError(os.str());
    }
  }
}

double get_number(const json& obj, const char* block, const std::string& key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) {
    std::ostringstream os;
    os << block << "." << key << " must be a number";
    throw ConfigError(os.str());
  }
  return v.get<double>();
}

json expect_object(const json& root, const char* key) {
  const json& v = root.at(key);
  if (!v.is_object())
    throw ConfigError(std::string(key) + " must be a JSON object");
  return v;
}

void parse_model(const json& j, ModelParams& p) {
  reject_unknown_keys(j, "model",
                      {"beta", "K", "nu_E", "mu_E", "mu_F", "mu_M", "mu_s",
                       "gamma", "r", "D"});
  p.beta = get_number(j, "model", "beta", p.beta);
  p.K = get_number(j, "model", "K", p.K);
  p.nu_E = get_number(j, "model", "nu_E", p.nu_E);
  p.mu_E = get_number(j, "model", "mu_E", p.mu_E);
  p.mu_F = get_number(j, "model", "mu_F", p.mu_F);
  p.mu_M = get_number(j, "model", "mu_M", p.mu_M);
  p.mu_s = get_number(j, "model", "mu_s", p.mu_s);
  p.gamma = get_number(j, "model", "gamma", p.gamma);
  p.r = get_number(j, "model", "r", p.r);
  p.D = get_number(j, "model", "D", p.D);
}

void parse_scalar(const json& j, ScalarParams& p) {
  reject_unknown_keys(j, "scalar", {"beta", "delta", "mu", "K"});
  p.beta = get_number(j, "scalar", "beta", p.beta);
  p.delta = get_number(j, "scalar", "delta", p.delta);
  p.mu = get_number(j, "scalar", "mu", p.mu);
  p.K = get_number(j, "scalar", "K", p.K);
}

void parse_grid(const json& j, Grid& g) {
  reject_unknown_keys(j, "grid", {"x_min", "x_max", "dx"});
  const double x_min = get_number(j, "grid", "x_min", g.x_min);
  const double x_max = get_number(j, "grid", "x_max", g.x_max);
  const double dx = get_number(j, "grid", "dx", g.dx());
  g = Grid::from_spacing(x_min, x_max, dx);
}

void parse_scheme(const json& j, SchemeConfig& sc) {
  reject_unknown_keys(j, "scheme", {"dt_safety", "t_end", "snapshot_every"});
  sc.dt_safety = get_number(j, "scheme", "dt_safety", sc.dt_safety);
  sc.t_end = get_number(j, "scheme", "t_end", sc.t_end);
  sc.snapshot_every =
      get_number(j, "scheme", "snapshot_every", sc.snapshot_every);
}

void parse_release(const json& j, ReleaseProfile& rp) {
  reject_unknown_keys(j, "release", {"A", "eta", "c", "mode"});
  rp.A = get_number(j, "release", "A", rp.A);
  rp.eta = get_number(j, "release", "eta", rp.eta);
  rp.c = get_number(j, "release", "c", rp.c);
  if (j.contains("mode")) {
    const std::string m = j.at("mode").get<std::string>();
    if (m == "moving_exponential")
      rp.mode = ReleaseMode::moving_exponential;
    else if (m == "off")
      rp.mode = ReleaseMode::off;
    else
      throw ConfigError("release.mode must be 'moving_exponential' or 'off'");
  }
}

void parse_search(const json& j, SearchConfig& s) {
  reject_unknown_keys(j, "search", {"lo", "hi"});
  if (!j.contains("lo") || !j.contains("hi"))
    throw ConfigError("search block needs both 'lo' and 'hi'");
  s.lo = get_number(j, "search", "lo", 0.0);
  s.hi = get_number(j, "search", "hi", 0.0);
}

ExperimentConfig parse_root(const json& root) {
  if (!root.is_object()) throw ConfigError("config root must be a JSON object");
  reject_unknown_keys(root, "top-level",
                      {"model", "scalar", "grid", "scheme", "release",
                       "experiment", "output_dir", "seed", "search"});

  ExperimentConfig cfg;
  cfg.release.A = 600.0;
  cfg.release.eta = 0.2;
  cfg.release.c = -0.3;
  cfg.release.mode = ReleaseMode::off;

  if (root.contains("model")) parse_model(expect_object(root, "model"), cfg.model);
  if (root.contains("scalar"))
    parse_scalar(expect_object(root, "scalar"), cfg.scalar);
  if (root.contains("grid")) {
    parse_grid(expect_object(root, "grid"), cfg.grid);
    cfg.grid_explicit = true;
  }
  if (root.contains("scheme"))
    parse_scheme(expect_object(root, "scheme"), cfg.scheme);
  if (root.contains("release"))
    parse_release(expect_object(root, "release"), cfg.release);
  if (root.contains("experiment")) {
    cfg.kind = experiment_kind_from_string(
        root.at("experiment").get<std::string>());
    cfg.kind_explicit = true;
  }
  if (root.contains("output_dir"))
    cfg.output_dir = root.at("output_dir").get<std::string>();
  if (root.contains("seed")) {
    const json& s = root.at("seed");
    if (!s.is_number_integer() || s.get<long long>() < 0)
      throw ConfigError("seed must be a nonnegative integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  if (root.contains("search")) {
    parse_search(expect_object(root, "search"), cfg.search);
    cfg.has_search = true;
  }

  cfg.validate();
  return cfg;
}

}  // namespace

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::simulate: return "simulate";
    case ExperimentKind::figure1: return "figure1";
    case ExperimentKind::speed: return "speed";
    case ExperimentKind::verify_constructions: return "verify_constructions";
    case ExperimentKind::search_amplitude: return "search_amplitude";
    case ExperimentKind::search_speed: return "search_speed";
  }
  return "simulate";
}

ExperimentKind experiment_kind_from_string(const std::string& s) {
  if (s == "simulate") return ExperimentKind::simulate;
  if (s == "figure1") return ExperimentKind::figure1;
  if (s == "speed") return ExperimentKind::speed;
  if (s == "verify_constructions") return ExperimentKind::verify_constructions;
  if (s == "search_amplitude") return ExperimentKind::search_amplitude;
  if (s == "search_speed") return ExperimentKind::search_speed;
  throw ConfigError("unknown experiment kind '" + s + "'");
}

void ExperimentConfig::validate() const {
  model.validate();
  scalar.validate();
  grid.validate();
  scheme.validate();
  release.validate();
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");

  switch (kind) {
    case ExperimentKind::verify_constructions:
      if (!(release.c < 0))
        throw ConfigError(
            "verify_constructions needs a negative sweep speed release.c");
      break;
    case ExperimentKind::search_amplitude:
    case ExperimentKind::search_speed:
      if (!has_search)
        throw ConfigError("search experiments need a search block {lo, hi}");
      if (!(search.hi > search.lo))
        throw ConfigError("search bracket needs hi > lo");
      if (kind == ExperimentKind::search_amplitude && search.lo < 0)
        throw ConfigError("amplitude bracket must be nonnegative");
      if (kind == ExperimentKind::search_speed && search.hi > 0)
        throw ConfigError("speed bracket must satisfy hi <= 0");
      break;
    default:
      break;
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file: " + path);
  json root;
  try {
    root = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config JSON parse error: ") + e.what());
  }
  return parse_root(root);
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config JSON parse error: ") + e.what());
  }
  return parse_root(root);
}

}  // namespace sit
