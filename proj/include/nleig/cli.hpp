#pragma once

// Support code for the `nleig` command-line tool: run configuration, the
// eigenvalue cache, CSV/JSON/SVG output and the verification suites.

#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "nleig/models.hpp"
#include "nleig/ode.hpp"
#include "nleig/spectrum.hpp"

namespace nleig::cli {

// --- configuration ---------------------------------------------------------

struct IndexRange {
  int first = 1;
  int last = 1;
};

/// "A..B" or "A" with 1 <= A <= B. Throws ConfigError.
IndexRange parse_range(const std::string& text);

struct RunConfig {
  std::string model = "cos";
  IndexRange n;
  std::optional<double> tol;
  std::optional<double> rel_tol;
  std::optional<double> abs_tol;
  std::optional<double> x_max;
  std::optional<double> h_max;
  std::string out_dir = ".";
  std::optional<std::string> cache;
  int workers = 0;
};

/// Keys accepted in config files and their flag equivalents.
const std::vector<std::string>& config_keys();

/// Validates and stores one setting. Throws ConfigError on unknown keys or
/// malformed values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// key = value lines; blank lines and lines starting with '#' are ignored.
void load_config(std::istream& in, RunConfig& cfg, const std::string& origin = "config");
void load_config_file(const std::string& path, RunConfig& cfg);

/// NLEIG_CACHE, when set, replaces the cache path.
void apply_environment(RunConfig& cfg);

/// Cache path after all overrides, or the default under $HOME/.cache.
std::string cache_path(const RunConfig& cfg);

/// Shooting settings for `model` with the overrides of `cfg` applied.
ode::IntegratorConfig integrator_config(const RunConfig& cfg, const models::GeneratingFunction& model);

double tolerance(const RunConfig& cfg, const models::GeneratingFunction& model);

// --- output ----------------------------------------------------------------

/// %.17g, round-trip exact for binary64.
std::string format_double(double v);

/// Writes to a temporary file in the same directory, then renames.
void write_file_atomic(const std::string& path, const std::string& content);

nlohmann::json to_json(const spectrum::EigenResult& r);
spectrum::EigenResult eigen_from_json(const nlohmann::json& j);

/// Columns n,E,residual,method,maxima.
std::string spectrum_csv(const std::vector<spectrum::EigenResult>& results);
std::string spectrum_json(const std::string& model, double tol, const std::vector<spectrum::EigenResult>& results);

// --- cache -----------------------------------------------------------------

/// Append-only JSON-lines file keyed by (model spec, n, tol). Corrupt lines
/// are skipped with a warning; later lines win over earlier ones.
class EigenCache {
 public:
  explicit EigenCache(std::string path);

  std::optional<spectrum::EigenResult> find(const std::string& model, int n, double tol) const;
  void append(const std::string& model, double tol, const std::vector<spectrum::EigenResult>& results);

  const std::string& path() const { return path_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  std::size_t size() const { return entries_.size(); }

 private:
  struct Key {
    std::string model;
    int n;
    double tol;
    bool operator<(const Key& o) const;
  };
  std::string path_;
  std::map<Key, spectrum::EigenResult> entries_;
  std::vector<std::string> warnings_;
  std::mutex write_mutex_;
};

// --- plotting --------------------------------------------------------------

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  std::vector<Series> series;
};

/// Fixed 720x480 viewport, no external assets; identical input gives
/// identical bytes.
std::string render_svg(const PlotSpec& plot);

struct CsvTable {
  std::vector<std::string> comments;  // leading '#' lines without the '#'
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(std::istream& in);

/// First column against every other numeric column; a log axis is chosen
/// when positive data spans more than four decades.
PlotSpec plot_from_csv(const CsvTable& table, const std::string& title);

// --- verification ----------------------------------------------------------

struct CheckRecord {
  std::string id;
  std::string reference;  // the claim being checked
  double predicted = 0.0;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckRecord> records;

  bool passed() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

struct VerifyOptions {
  std::string model = "cos";
  int n_max = 100;
  int workers = 0;
};

const std::vector<std::string>& verify_suites();

/// Suites: walk, limits, growth, rgamma, envelope, all. Throws ConfigError
/// for unknown names.
VerificationReport run_verify(const std::string& suite, const VerifyOptions& opts);

}  // namespace nleig::cli
