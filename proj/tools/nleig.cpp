// nleig: eigenvalue scans, separatrix and limit-curve export, verification
// reports and SVG plots for y'(x) = F(x y). Exit codes: 0 success,
// 1 computation failure, 2 configuration error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "nleig/asymptotics.hpp"
#include "nleig/cli.hpp"
#include "nleig/error.hpp"
#include "nleig/specfun.hpp"

namespace {

using namespace nleig;
using cli::RunConfig;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kConfigError = 2;

// Flags are collected as text and validated by the same code as config files.
struct FlagSet {
  std::map<std::string, std::string> values;
  std::string config_path;

  void add_to(CLI::App* cmd, const std::vector<std::string>& keys) {
    cmd->add_option("--config", config_path, "key = value configuration file");
    static const std::map<std::string, std::pair<std::string, std::string>> all = {
        {"model", {"--model", "cos, bessel:NU, airy, rgamma or xibar"}},
        {"n", {"--n", "index or range A..B"}},
        {"tol", {"--tol", "relative eigenvalue tolerance"}},
        {"rel_tol", {"--rel-tol", "integrator relative tolerance"}},
        {"abs_tol", {"--abs-tol", "integrator absolute tolerance"}},
        {"x_max", {"--x-max", "forward horizon in the shooting variable"}},
        {"h_max", {"--h-max", "largest integrator step"}},
        {"out_dir", {"--out-dir", "directory for output files"}},
        {"cache", {"--cache", "eigenvalue cache file (JSON lines)"}},
        {"workers", {"--workers", "worker threads, 0 = hardware concurrency"}},
    };
    for (const auto& key : keys) {
      const auto& [flag, help] = all.at(key);
      cmd->add_option(flag, values[key], help);
    }
  }

  RunConfig resolve(CLI::App* cmd) const {
    RunConfig cfg;
    if (!config_path.empty()) cli::load_config_file(config_path, cfg);
    cli::apply_environment(cfg);
    for (const auto& [key, value] : values) {
      const std::string flag = "--" + std::string(key == "rel_tol"   ? "rel-tol"
                                                  : key == "abs_tol" ? "abs-tol"
                                                  : key == "x_max"   ? "x-max"
                                                  : key == "h_max"   ? "h-max"
                                                  : key == "out_dir" ? "out-dir"
                                                                     : key);
      if (cmd->count(flag) > 0) cli::apply_setting(cfg, key, value);
    }
    return cfg;
  }
};

std::string file_stem(const std::string& model) {
  std::string s = model;
  for (char& c : s)
    if (c == ':' || c == '/') c = '-';
  return s;
}

std::string join(const std::string& dir, const std::string& name) {
  return dir.empty() || dir == "." ? name : dir + "/" + name;
}

int cmd_spectrum(CLI::App* cmd, const FlagSet& flags, bool no_cache, bool check_cache, std::string csv_path,
                 std::string json_path) {
  const RunConfig cfg = flags.resolve(cmd);
  const models::GeneratingFunction model = models::GeneratingFunction::parse(cfg.model);
  const std::string spec = model.spec();
  const double tol = cli::tolerance(cfg, model);
  const ode::IntegratorConfig icfg = cli::integrator_config(cfg, model);
  const std::string stem = "spectrum_" + file_stem(spec) + "_" + std::to_string(cfg.n.first) + "_" +
                           std::to_string(cfg.n.last);
  if (csv_path.empty()) csv_path = join(cfg.out_dir, stem + ".csv");
  if (json_path.empty()) json_path = join(cfg.out_dir, stem + ".json");

  std::unique_ptr<cli::EigenCache> cache;
  if (!no_cache) {
    cache = std::make_unique<cli::EigenCache>(cli::cache_path(cfg));
    for (const auto& w : cache->warnings()) std::cerr << "warning: " << w << "\n";
  }

  std::vector<spectrum::EigenResult> results;
  std::vector<int> missing;
  std::vector<std::size_t> slot;
  for (int n = cfg.n.first; n <= cfg.n.last; ++n) {
    std::optional<spectrum::EigenResult> hit;
    if (cache) hit = cache->find(spec, n, tol);
    if (hit) {
      std::cerr << "cache hit: " << spec << " n=" << n << " tol=" << cli::format_double(tol) << "\n";
      results.push_back(*hit);
    } else {
      missing.push_back(n);
      slot.push_back(results.size());
      results.emplace_back();
    }
  }
  bool coherent = true;
  if (check_cache) {
    for (auto& r : results) {
      if (r.n == 0) continue;
      const spectrum::EigenResult fresh = spectrum::find_eigen(model, r.n, tol, icfg);
      const double diff = std::abs(fresh.log10_E - r.log10_E) * std::log(10.0);
      const bool same = fresh.ok && diff <= tol;
      coherent = coherent && same;
      std::cerr << (same ? "cache check ok: " : "cache check MISMATCH: ") << spec << " n=" << r.n
                << " relative difference " << cli::format_double(diff) << "\n";
    }
  }
  const std::vector<spectrum::EigenResult> fresh = spectrum::spectrum_scan(model, missing, tol, icfg, cfg.workers);
  for (std::size_t i = 0; i < fresh.size(); ++i) results[slot[i]] = fresh[i];
  spectrum::check_monotone(results);
  if (cache) cache->append(spec, tol, fresh);

  cli::write_file_atomic(csv_path, cli::spectrum_csv(results));
  cli::write_file_atomic(json_path, cli::spectrum_json(spec, tol, results));
  bool all_ok = coherent;
  for (const auto& r : results) {
    if (r.ok) {
      std::printf("n=%d E=%s log10_E=%.6f maxima=%d\n", r.n, cli::format_double(r.E).c_str(), r.log10_E, r.maxima);
    } else {
      std::printf("n=%d FAILED: %s\n", r.n, r.error.c_str());
      all_ok = false;
    }
  }
  std::printf("wrote %s and %s\n", csv_path.c_str(), json_path.c_str());
  return all_ok ? kOk : kFailure;
}

int cmd_separatrix(CLI::App* cmd, const FlagSet& flags, const std::string& coords, double t_max, int points,
                   std::string out, const std::string& svg) {
  RunConfig cfg = flags.resolve(cmd);
  if (cfg.n.first != cfg.n.last) throw ConfigError("separatrix: --n takes a single index");
  const int n = cfg.n.first;
  const models::GeneratingFunction model = models::GeneratingFunction::parse(cfg.model);
  const bool identity = model.id() == models::ModelId::xi_bar;
  if (coords != "scaled" && coords != "raw") throw ConfigError("separatrix: --coords must be scaled or raw");
  const bool raw = coords == "raw" || identity;
  if (coords == "raw" && model.id() == models::ModelId::recip_gamma && n > 5)
    throw ConfigError("separatrix: raw coordinates are refused for rgamma beyond n = 5; use --coords scaled");
  if (points < 2) throw ConfigError("separatrix: --points must be at least 2");
  if (!(t_max > 0.0)) throw ConfigError("separatrix: --t-max must be positive");
  const ode::IntegratorConfig icfg = cli::integrator_config(cfg, model);

  const models::ScaledProblem p = identity ? models::ScaledProblem::identity(model) : models::ScaledProblem(model, n);
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[i] = t_max * i / (points - 1);
  ode::SolutionCurve c = spectrum::separatrix_curve(model, n, grid, icfg);

  std::vector<double> overlay;
  if (!identity) {
    for (double t : c.grid) {
      if (model.id() == models::ModelId::recip_gamma)
        overlay.push_back(asymptotics::rgamma_limit_curve(t));
      else
        overlay.push_back(asymptotics::limit_curve_value(model.asym().alpha, t));
    }
  }
  if (raw && !identity) {
    for (std::size_t i = 0; i < c.grid.size(); ++i) {
      const auto [x, y] = p.from_scaled(c.grid[i], c.values[i]);
      c.grid[i] = x;
      c.values[i] = y;
      overlay[i] = p.from_scaled(1.0, overlay[i]).second;
    }
    c.coords = ode::Coords::raw;
  }
  c.extrema.clear();
  int maxima = 0;
  for (std::size_t i = 1; i + 1 < c.values.size(); ++i) maxima += c.values[i] > c.values[i - 1] && c.values[i] >= c.values[i + 1];

  if (out.empty()) out = join(cfg.out_dir, "separatrix_" + file_stem(model.spec()) + "_" + std::to_string(n) + ".csv");
  std::ostringstream csv;
  c.write_csv(csv);
  cli::write_file_atomic(out, csv.str());
  if (!svg.empty()) {
    cli::PlotSpec plot;
    plot.title = model.spec() + " separatrix n=" + std::to_string(n);
    plot.x_label = raw ? "x" : "t";
    plot.y_label = raw ? "y" : "z";
    plot.series.push_back({"separatrix", c.grid, c.values, false});
    if (!overlay.empty()) plot.series.push_back({raw ? "limit curve (scaled back)" : "limit curve", c.grid, overlay, true});
    cli::write_file_atomic(svg, cli::render_svg(plot));
  }
  if (!c.grid.empty() && c.grid.front() == 0.0)
    std::printf("y(0) from the separatrix: %s (%s coordinates)\n", cli::format_double(c.values.front()).c_str(),
                raw ? "raw" : "scaled");
  std::printf("sampled maxima on the grid: %d\nwrote %s\n", maxima, out.c_str());
  return kOk;
}

int cmd_limit_curve(double alpha, int points, double t_max, const std::string& out, const std::string& svg) {
  if (points < 2) throw ConfigError("limit-curve: --points must be at least 2");
  if (!(t_max > 0.0)) throw ConfigError("limit-curve: --t-max must be positive");
  if (!(alpha > -1.0)) throw ConfigError("limit-curve: --alpha must exceed -1");
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[i] = t_max * i / (points - 1);
  const asymptotics::LimitCurve lc = asymptotics::limit_curve(alpha, grid);
  std::ostringstream csv;
  lc.write_csv(csv);
  if (out.empty())
    std::cout << csv.str();
  else
    cli::write_file_atomic(out, csv.str());
  if (!svg.empty()) {
    cli::PlotSpec plot;
    plot.title = "limit curve, alpha = " + cli::format_double(alpha);
    plot.x_label = "t";
    plot.y_label = "z";
    plot.series.push_back({"z_inf", lc.grid, lc.z, false});
    cli::write_file_atomic(svg, cli::render_svg(plot));
  }
  return kOk;
}

int cmd_walk(int p_max, bool check, const std::string& out) {
  if (p_max < 0 || p_max > 60) throw ConfigError("walk-coeffs: --p-max must lie in [0, 60]");
  const auto w = asymptotics::walk_coefficients(p_max);
  std::ostringstream csv;
  csv << "p,numerator,denominator\n";
  for (int p = 0; p <= p_max; ++p)
    csv << p << ',' << numerator(w.values[p]) << ',' << denominator(w.values[p]) << '\n';
  if (out.empty())
    std::cout << csv.str();
  else
    cli::write_file_atomic(out, csv.str());
  if (check) {
    const auto dp = asymptotics::walk_coefficients_dp(p_max);
    const bool same = dp.values == w.values;
    std::cerr << (same ? "PASS" : "FAIL") << " closed form equals the walk dynamic program for p <= " << p_max << "\n";
    return same ? kOk : kFailure;
  }
  return kOk;
}

int cmd_verify(const std::string& suite, const cli::VerifyOptions& opts, const std::string& json_path) {
  const cli::VerificationReport rep = cli::run_verify(suite, opts);
  std::cout << rep.to_text();
  if (!json_path.empty()) cli::write_file_atomic(json_path, rep.to_json().dump(2) + "\n");
  return rep.passed() ? kOk : kFailure;
}

int cmd_plot(const std::string& path, std::string out, std::string title) {
  std::ifstream in(path);
  if (!in) throw ConfigError("plot: cannot open '" + path + "'");
  const cli::CsvTable table = cli::read_csv(in);
  if (title.empty()) {
    const auto slash = path.find_last_of('/');
    title = slash == std::string::npos ? path : path.substr(slash + 1);
  }
  if (out.empty()) {
    const auto dot = path.find_last_of('.');
    out = (dot == std::string::npos || dot < path.find_last_of('/') + 1 ? path : path.substr(0, dot)) + ".svg";
  }
  cli::write_file_atomic(out, cli::render_svg(cli::plot_from_csv(table, title)));
  std::printf("wrote %s\n", out.c_str());
  return kOk;
}

int cmd_selftest() {
  bool ok = true;
  for (const auto& line : specfun::run_selftest()) {
    std::printf("%s %s: got %.17g expected %.17g tolerance %.3g\n", line.pass ? "PASS" : "FAIL", line.name.c_str(),
                line.got, line.expected, line.tolerance);
    ok = ok && line.pass;
  }
  return ok ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlinear eigenvalues of y'(x) = F(x y), y(0) = E"};
  app.require_subcommand(1);

  FlagSet spec_flags;
  bool no_cache = false, check_cache = false;
  std::string csv_path, json_path;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues E_n for a range of n (CSV + JSON)");
  spec_flags.add_to(spectrum_cmd, {"model", "n", "tol", "rel_tol", "abs_tol", "x_max", "h_max", "out_dir", "cache",
                                   "workers"});
  spectrum_cmd->add_flag("--no-cache", no_cache, "neither read nor update the cache");
  spectrum_cmd->add_flag("--check-cache", check_cache, "recompute cached entries and compare");
  spectrum_cmd->add_option("--csv", csv_path, "CSV output path");
  spectrum_cmd->add_option("--json", json_path, "JSON output path");

  FlagSet sep_flags;
  std::string coords = "scaled", sep_out, sep_svg;
  double sep_tmax = 3.0;
  int sep_points = 3001;
  auto* sep_cmd = app.add_subcommand("separatrix", "the n-th separatrix by backward integration (CSV, optional SVG)");
  sep_flags.add_to(sep_cmd, {"model", "n", "rel_tol", "abs_tol", "h_max", "out_dir"});
  sep_cmd->add_option("--coords", coords, "scaled (t, z) or raw (x, y)");
  sep_cmd->add_option("--t-max", sep_tmax, "largest scaled abscissa sampled");
  sep_cmd->add_option("--points", sep_points, "number of sample points");
  sep_cmd->add_option("--out", sep_out, "CSV output path");
  sep_cmd->add_option("--svg", sep_svg, "also render an SVG plot with the limit curve overlay");

  double alpha = 0.0, lc_tmax = 2.0;
  int lc_points = 201;
  std::string lc_out, lc_svg;
  auto* lc_cmd = app.add_subcommand("limit-curve", "the limit curve z_inf(t) for exponent alpha (CSV)");
  lc_cmd->add_option("--alpha", alpha, "exponent alpha > -1")->required();
  lc_cmd->add_option("--points", lc_points, "number of sample points on [0, t-max]");
  lc_cmd->add_option("--t-max", lc_tmax, "upper end of the grid");
  lc_cmd->add_option("--out", lc_out, "CSV output path (default: stdout)");
  lc_cmd->add_option("--svg", lc_svg, "also render an SVG plot");

  int p_max = 10;
  bool walk_check = false;
  std::string walk_out;
  auto* walk_cmd = app.add_subcommand("walk-coeffs", "exact walk coefficients -C_p / 2^(2p+1) (CSV)");
  walk_cmd->add_option("--p-max", p_max, "highest p, at most 60");
  walk_cmd->add_flag("--check", walk_check, "compare with the absorbing-walk dynamic program");
  walk_cmd->add_option("--out", walk_out, "CSV output path (default: stdout)");

  std::string suite, verify_json;
  cli::VerifyOptions vopts;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("suite", suite, "walk, limits, growth, rgamma, envelope or all")->required();
  verify_cmd->add_option("--model", vopts.model, "model for the growth suite");
  verify_cmd->add_option("--n-max", vopts.n_max, "largest index for the growth suite");
  verify_cmd->add_option("--workers", vopts.workers, "worker threads, 0 = hardware concurrency");
  verify_cmd->add_option("--json", verify_json, "write the report as JSON");

  std::string plot_in, plot_out, plot_title;
  auto* plot_cmd = app.add_subcommand("plot", "render a CSV produced by nleig as SVG");
  plot_cmd->add_option("csv", plot_in, "input CSV")->required();
  plot_cmd->add_option("-o,--out", plot_out, "SVG output path (default: input with .svg)");
  plot_cmd->add_option("--title", plot_title, "plot title");

  auto* selftest_cmd = app.add_subcommand("specfun-selftest", "golden-table check of the special functions");
  selftest_cmd->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*spectrum_cmd) return cmd_spectrum(spectrum_cmd, spec_flags, no_cache, check_cache, csv_path, json_path);
    if (*sep_cmd) return cmd_separatrix(sep_cmd, sep_flags, coords, sep_tmax, sep_points, sep_out, sep_svg);
    if (*lc_cmd) return cmd_limit_curve(alpha, lc_points, lc_tmax, lc_out, lc_svg);
    if (*walk_cmd) return cmd_walk(p_max, walk_check, walk_out);
    if (*verify_cmd) return cmd_verify(suite, vopts, verify_json);
    if (*plot_cmd) return cmd_plot(plot_in, plot_out, plot_title);
    if (*selftest_cmd) return cmd_selftest();
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kConfigError;
}
