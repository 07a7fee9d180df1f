#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <string>

#include "nleig/cli.hpp"
#include "nleig/error.hpp"

namespace nleig::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_positive(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size() || !(v > 0.0) || !std::isfinite(v))
    throw ConfigError(key + ": expected a positive number, got '" + value + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& value, int min_value) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size() || v < min_value || v > 1'000'000)
    throw ConfigError(key + ": expected an integer >= " + std::to_string(min_value) + ", got '" + value + "'");
  return static_cast<int>(v);
}

}  // namespace

IndexRange parse_range(const std::string& text) {
  const std::string t = trim(text);
  const auto dots = t.find("..");
  IndexRange r;
  if (dots == std::string::npos) {
    r.first = r.last = parse_int("n", t, 1);
  } else {
    r.first = parse_int("n", t.substr(0, dots), 1);
    r.last = parse_int("n", t.substr(dots + 2), 1);
  }
  if (r.last < r.first) throw ConfigError("n: range '" + text + "' is decreasing");
  return r;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {"model", "n",     "tol",   "rel_tol", "abs_tol",
                                                "x_max", "h_max", "out_dir", "cache", "workers"};
  return keys;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "model") {
    models::GeneratingFunction::parse(value);
    cfg.model = value;
  } else if (key == "n") {
    cfg.n = parse_range(value);
  } else if (key == "tol") {
    const double v = parse_positive(key, value);
    if (v < 1e-12 || v >= 1.0) throw ConfigError("tol must lie in [1e-12, 1)");
    cfg.tol = v;
  } else if (key == "rel_tol") {
    cfg.rel_tol = parse_positive(key, value);
  } else if (key == "abs_tol") {
    cfg.abs_tol = parse_positive(key, value);
  } else if (key == "x_max") {
    cfg.x_max = parse_positive(key, value);
  } else if (key == "h_max") {
    cfg.h_max = parse_positive(key, value);
  } else if (key == "out_dir") {
    if (value.empty()) throw ConfigError("out_dir must not be empty");
    cfg.out_dir = value;
  } else if (key == "cache") {
    if (value.empty()) throw ConfigError("cache must not be empty");
    cfg.cache = value;
  } else if (key == "workers") {
    cfg.workers = parse_int(key, value, 0);
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

void load_config(std::istream& in, RunConfig& cfg, const std::string& origin) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected key = value");
    try {
      apply_setting(cfg, trim(t.substr(0, eq)), t.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  load_config(in, cfg, path);
}

void apply_environment(RunConfig& cfg) {
  if (const char* env = std::getenv("NLEIG_CACHE"); env && *env) cfg.cache = env;
}

std::string cache_path(const RunConfig& cfg) {
  if (cfg.cache) return *cfg.cache;
  if (const char* home = std::getenv("HOME"); home && *home) return std::string(home) + "/.cache/nleig/eigenvalues.jsonl";
  return "nleig-cache.jsonl";
}

ode::IntegratorConfig integrator_config(const RunConfig& cfg, const models::GeneratingFunction& model) {
  ode::IntegratorConfig c = spectrum::default_shooting_config(model);
  if (cfg.rel_tol) c.rel_tol = *cfg.rel_tol;
  if (cfg.abs_tol) c.abs_tol = *cfg.abs_tol;
  if (cfg.x_max) c.x_max = *cfg.x_max;
  if (cfg.h_max) c.h_max = *cfg.h_max;
  try {
    c.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return c;
}

double tolerance(const RunConfig& cfg, const models::GeneratingFunction& model) {
  return cfg.tol ? *cfg.tol : spectrum::default_tolerance(model);
}

}  // namespace nleig::cli
