#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <unistd.h>

#include "doctest.h"
#include "nleig/cli.hpp"
#include "nleig/error.hpp"

using namespace nleig;
using namespace nleig::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("nleig_unit_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

spectrum::EigenResult sample_result(int n, double E) {
  spectrum::EigenResult r;
  r.n = n;
  r.E = E;
  r.log10_E = std::log10(E);
  r.z0 = 0.9;
  r.lambda = 4.5;
  r.lo = E * (1 - 1e-11);
  r.hi = E * (1 + 1e-11);
  r.method = spectrum::Method::backward;
  r.evidence = "basin jump 0->1";
  r.residual = 2e-11;
  r.maxima = n;
  r.class_lo = n - 1;
  r.class_hi = n;
  return r;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("index ranges") {
  CHECK(parse_range("7").first == 7);
  CHECK(parse_range("7").last == 7);
  CHECK(parse_range("2..40").first == 2);
  CHECK(parse_range("2..40").last == 40);
  for (const char* bad : {"", "0", "5..3", "a..b", "1..", "-1", "1.5"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_range(bad), ConfigError);
  }
}

TEST_CASE("config file parsing") {
  RunConfig cfg;
  std::istringstream in("# comment\nmodel = bessel:1\n\nn = 1..12\ntol=1e-9\nrel_tol = 1e-11\nworkers = 3\nout_dir = out\n");
  load_config(in, cfg);
  CHECK(cfg.model == "bessel:1");
  CHECK(cfg.n.last == 12);
  CHECK(*cfg.tol == 1e-9);
  CHECK(*cfg.rel_tol == 1e-11);
  CHECK(cfg.workers == 3);
  CHECK(cfg.out_dir == "out");
  CHECK_FALSE(cfg.cache.has_value());
}

TEST_CASE("config errors name the line") {
  RunConfig cfg;
  std::istringstream unknown("model = cos\ncolour = blue\n");
  try {
    load_config(unknown, cfg, "run.cfg");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("run.cfg:2") != std::string::npos);
    CHECK(std::string(e.what()).find("colour") != std::string::npos);
  }
  std::istringstream noeq("model cos\n");
  CHECK_THROWS_AS(load_config(noeq, cfg), ConfigError);
  for (const auto& [k, v] : {std::pair{"model", "tan"}, {"tol", "0"}, {"tol", "1e-13"}, {"workers", "-1"},
                             {"x_max", "abc"}, {"n", "3..1"}}) {
    CAPTURE(k);
    CHECK_THROWS_AS(apply_setting(cfg, k, v), ConfigError);
  }
  CHECK_THROWS_AS(load_config_file("/nonexistent/nleig.cfg", cfg), ConfigError);
}

TEST_CASE("flags override the config file and the environment overrides the cache path") {
  RunConfig cfg;
  std::istringstream in("model = airy\ncache = /tmp/from_file.jsonl\ntol = 1e-8\n");
  load_config(in, cfg);
  ::setenv("NLEIG_CACHE", "/tmp/from_env.jsonl", 1);
  apply_environment(cfg);
  CHECK(cache_path(cfg) == "/tmp/from_env.jsonl");
  apply_setting(cfg, "cache", "/tmp/from_flag.jsonl");
  apply_setting(cfg, "tol", "1e-10");
  CHECK(cache_path(cfg) == "/tmp/from_flag.jsonl");
  CHECK(*cfg.tol == 1e-10);
  CHECK(cfg.model == "airy");
  ::unsetenv("NLEIG_CACHE");
  RunConfig plain;
  apply_environment(plain);
  CHECK(cache_path(plain).find("eigenvalues.jsonl") != std::string::npos);
}

TEST_CASE("integrator settings from a run configuration") {
  const auto f = models::GeneratingFunction::cosine();
  RunConfig cfg;
  CHECK(integrator_config(cfg, f).rel_tol == spectrum::default_shooting_config(f).rel_tol);
  CHECK(tolerance(cfg, f) == spectrum::default_tolerance(f));
  apply_setting(cfg, "x_max", "5");
  apply_setting(cfg, "rel_tol", "1e-9");
  CHECK(integrator_config(cfg, f).x_max == 5.0);
  CHECK(integrator_config(cfg, f).rel_tol == 1e-9);
  apply_setting(cfg, "rel_tol", "1e-3");
  CHECK_THROWS_AS(integrator_config(cfg, f), ConfigError);
}

TEST_CASE("EigenResult JSON round trip including infinities") {
  spectrum::EigenResult r = sample_result(3, 2.5);
  r.hi = std::numeric_limits<double>::infinity();
  const nlohmann::json j = to_json(r);
  CHECK(j["hi"].is_null());
  CHECK(j["method"] == "backward");
  const spectrum::EigenResult back = eigen_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.E == r.E);
  CHECK(std::isinf(back.hi));
  CHECK(back.method == spectrum::Method::backward);
  CHECK(back.evidence == r.evidence);
  CHECK(back.class_hi == 3);
}

TEST_CASE("spectrum CSV and JSON") {
  std::vector<spectrum::EigenResult> rs = {sample_result(1, 1.5), sample_result(2, 2.25)};
  rs[1].ok = false;
  rs[1].error = "boom";
  CHECK(spectrum_csv(rs) == "n,E,residual,method,maxima\n1,1.5,1.9999999999999999e-11,backward,1\n2,nan,nan,failed,-1\n");
  const auto doc = nlohmann::json::parse(spectrum_json("cos", 1e-10, rs));
  CHECK(doc["model"] == "cos");
  CHECK(doc["results"].size() == 2);
  CHECK(doc["results"][1]["ok"] == false);
  CHECK(doc["results"][1]["error"] == "boom");
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("atomic writes create directories and replace content") {
  TempDir d;
  const fs::path p = d.path / "a" / "b" / "out.txt";
  write_file_atomic(p.string(), "one\n");
  CHECK(slurp(p) == "one\n");
  write_file_atomic(p.string(), "two\n");
  CHECK(slurp(p) == "two\n");
  int files = 0;
  for (const auto& e : fs::directory_iterator(p.parent_path())) files += e.is_regular_file();
  CHECK(files == 1);
}

TEST_CASE("eigenvalue cache round trip, tolerance keying and corrupt lines") {
  TempDir d;
  const std::string path = (d.path / "sub" / "cache.jsonl").string();
  {
    EigenCache c(path);
    CHECK(c.size() == 0);
    std::vector<spectrum::EigenResult> rs = {sample_result(1, 1.5), sample_result(2, 2.25)};
    rs[1].ok = false;
    c.append("cos", 1e-10, rs);
    CHECK(c.size() == 1);
  }
  {
    std::ofstream out(path, std::ios::app);
    out << "{not json\n";
    out << R"({"model":"cos","n":5,"tol":1e-10,"result":{"n":4}})" << "\n";
  }
  EigenCache c(path);
  CHECK(c.warnings().size() == 2);
  CHECK(c.warnings()[0].find(":2:") != std::string::npos);
  REQUIRE(c.find("cos", 1, 1e-10).has_value());
  CHECK(c.find("cos", 1, 1e-10)->E == 1.5);
  CHECK_FALSE(c.find("cos", 1, 1e-9).has_value());
  CHECK_FALSE(c.find("airy", 1, 1e-10).has_value());
  CHECK_FALSE(c.find("cos", 2, 1e-10).has_value());
  c.append("cos", 1e-10, {sample_result(1, 1.75)});
  EigenCache later(path);
  CHECK(later.find("cos", 1, 1e-10)->E == 1.75);
}

TEST_CASE("CSV reading") {
  std::istringstream in("# model=cos, n=1, coords=scaled\nt,z\n0,1.2\n0.5,1\r\n");
  const CsvTable t = read_csv(in);
  REQUIRE(t.comments.size() == 1);
  CHECK(t.comments[0] == "model=cos, n=1, coords=scaled");
  CHECK(t.columns == std::vector<std::string>{"t", "z"});
  CHECK(t.rows.size() == 2);
  CHECK(t.rows[1][1] == "1");
  std::istringstream ragged("a,b\n1\n");
  CHECK_THROWS_AS(read_csv(ragged), ConfigError);
  std::istringstream narrow("a\n1\n");
  CHECK_THROWS_AS(read_csv(narrow), ConfigError);
}

TEST_CASE("plots from CSV are deterministic") {
  std::istringstream in("n,E,residual,method,maxima\n1,1.6,1e-11,bisection,1\n2,2.4,1e-11,bisection,2\n3,nan,nan,failed,-1\n");
  const CsvTable t = read_csv(in);
  const PlotSpec p = plot_from_csv(t, "spectrum");
  REQUIRE(p.series.size() == 1);
  CHECK(p.series[0].label == "E");
  CHECK_FALSE(p.log_y);
  const std::string a = render_svg(p), b = render_svg(p);
  CHECK(a == b);
  CHECK(a.rfind("<?xml", 0) == 0);
  CHECK(a.find("<polyline") != std::string::npos);
  CHECK(a.find("nan") == std::string::npos);

  std::istringstream wide("n,E\n1,1\n2,1e8\n");
  CHECK(plot_from_csv(read_csv(wide), "big").log_y);
  std::istringstream text("a,b\nx,y\n");
  CHECK_THROWS_AS(plot_from_csv(read_csv(text), "none"), ConfigError);
}

TEST_CASE("SVG escapes labels") {
  PlotSpec p;
  p.title = "a<b & c";
  p.series.push_back({"s\"1", {0, 1}, {0, 1}, true});
  const std::string svg = render_svg(p);
  CHECK(svg.find("a&lt;b &amp; c") != std::string::npos);
  CHECK(svg.find("s&quot;1") != std::string::npos);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
}

TEST_CASE("verification reports") {
  const VerificationReport walk = run_verify("walk", {});
  CHECK(walk.passed());
  CHECK(walk.records.size() == 4);
  for (const auto& r : walk.records) CHECK_FALSE(r.reference.empty());
  CHECK(walk.to_json()["passed"] == true);
  CHECK(walk.to_text().find("PASS suite walk") != std::string::npos);
  CHECK(run_verify("limits", {}).passed());
  CHECK_THROWS_AS(run_verify("nope", {}), ConfigError);
  VerifyOptions rg;
  rg.model = "rgamma";
  CHECK_THROWS_AS(run_verify("growth", rg), ConfigError);
  VerificationReport fake;
  fake.records.push_back({"x", "ref", 1.0, 2.0, 0.1, false});
  CHECK_FALSE(fake.passed());
}

}
