#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <unistd.h>

#include "nleig/cli.hpp"
#include "nleig/error.hpp"

namespace nleig::cli {

namespace {

using nlohmann::json;

// JSON has no infinities; E beyond binary64 is stored as null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or_inf(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  return j.get<double>();
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename onto '" + path + "': " + ec.message());
  }
}

json to_json(const spectrum::EigenResult& r) {
  return json{{"n", r.n},
              {"E", number_or_null(r.E)},
              {"log10_E", r.log10_E},
              {"z0", r.z0},
              {"lambda", r.lambda},
              {"lo", number_or_null(r.lo)},
              {"hi", number_or_null(r.hi)},
              {"method", spectrum::to_string(r.method)},
              {"evidence", r.evidence},
              {"residual", r.residual},
              {"maxima", r.maxima},
              {"class_lo", r.class_lo},
              {"class_hi", r.class_hi},
              {"ok", r.ok},
              {"error", r.error}};
}

spectrum::EigenResult eigen_from_json(const json& j) {
  spectrum::EigenResult r;
  r.n = j.at("n").get<int>();
  r.E = number_or_inf(j.at("E"));
  r.log10_E = j.at("log10_E").get<double>();
  r.z0 = j.at("z0").get<double>();
  r.lambda = j.at("lambda").get<double>();
  r.lo = number_or_inf(j.at("lo"));
  r.hi = number_or_inf(j.at("hi"));
  const std::string m = j.at("method").get<std::string>();
  if (m == "bisection")
    r.method = spectrum::Method::bisection;
  else if (m == "backward")
    r.method = spectrum::Method::backward;
  else
    throw std::runtime_error("unknown method '" + m + "'");
  r.evidence = j.at("evidence").get<std::string>();
  r.residual = j.at("residual").get<double>();
  r.maxima = j.at("maxima").get<int>();
  r.class_lo = j.at("class_lo").get<int>();
  r.class_hi = j.at("class_hi").get<int>();
  r.ok = j.at("ok").get<bool>();
  r.error = j.at("error").get<std::string>();
  return r;
}

std::string spectrum_csv(const std::vector<spectrum::EigenResult>& results) {
  std::ostringstream os;
  os << "n,E,residual,method,maxima\n";
  for (const auto& r : results) {
    os << r.n << ',';
    if (r.ok)
      os << format_double(r.E) << ',' << format_double(r.residual) << ',' << spectrum::to_string(r.method) << ','
         << r.maxima;
    else
      os << "nan,nan,failed,-1";
    os << '\n';
  }
  return os.str();
}

std::string spectrum_json(const std::string& model, double tol, const std::vector<spectrum::EigenResult>& results) {
  json doc;
  doc["model"] = model;
  doc["tol"] = tol;
  doc["results"] = json::array();
  for (const auto& r : results) doc["results"].push_back(to_json(r));
  return doc.dump(2) + "\n";
}

}  // namespace nleig::cli
