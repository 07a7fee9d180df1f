#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "nleig/asymptotics.hpp"
#include "nleig/cli.hpp"
#include "nleig/error.hpp"

namespace nleig::cli {

namespace {

using asymptotics::limit_curve_value;
using models::GeneratingFunction;

CheckRecord within(std::string id, std::string reference, double predicted, double measured, double tol) {
  const bool pass = std::isfinite(measured) && std::abs(measured - predicted) <= tol;
  return {std::move(id), std::move(reference), predicted, measured, tol, pass};
}

CheckRecord at_most(std::string id, std::string reference, double bound, double measured) {
  return {std::move(id), std::move(reference), 0.0, measured, bound, std::isfinite(measured) && measured <= bound};
}

// Half a unit in the third significant digit of p.
double three_digits(double p) { return 0.005 * std::pow(10.0, std::floor(std::log10(p))); }

void suite_walk(std::vector<CheckRecord>& out) {
  const auto closed = asymptotics::walk_coefficients(60);
  const auto dp = asymptotics::walk_coefficients_dp(60);
  int mismatches = 0;
  for (int p = 0; p <= 60; ++p) mismatches += closed.values[p] != dp.values[p];
  out.push_back(within("walk.closed_vs_dp", "alpha_{1,2p+1} = Gamma(p+1/2)/(Gamma(-1/2)(p+1)!) = -C_p/2^(2p+1), p <= 60",
                       0.0, mismatches, 0.0));
  const std::pair<double, double> xs[] = {{0.1, 1e-10}, {0.5, 1e-10}, {0.9, 1e-7}};
  for (const auto& [x, tol] : xs) {
    const double target = (std::sqrt(1.0 - x * x) - 1.0) / x;
    std::ostringstream id;
    id << "walk.partial_sum.x=" << x;
    out.push_back(within(id.str(), "sum_p alpha_{1,2p+1} x^(2p+1) = (sqrt(1-x^2)-1)/x", target,
                         asymptotics::walk_partial_sum(closed, x), tol));
  }
}

void suite_limits(std::vector<CheckRecord>& out) {
  for (double a : {-0.9, -0.5, 0.0, 1.0, 5.0}) {
    std::ostringstream id;
    id << "limits.z(1).alpha=" << a;
    out.push_back(within(id.str(), "z_inf(1) = 1", 1.0, limit_curve_value(a, 1.0), 1e-12));
  }
  out.push_back(within("limits.z(0).alpha=-0.5", "z_inf(0) = (2^(1+alpha)/(1+alpha)^2)^(1/((1-alpha)(3-alpha)))",
                       std::pow(2.0, 10.0 / 21.0), limit_curve_value(-0.5, 0.0), 1e-12));
  out.push_back(within("limits.z(0).alpha=0", "z_inf(0) = (2^(1+alpha)/(1+alpha)^2)^(1/((1-alpha)(3-alpha)))",
                       std::cbrt(2.0), limit_curve_value(0.0, 0.0), 1e-12));
  double worst = 0.0;
  for (int i = 1; i <= 200; ++i) {
    const double t = i / 200.0;
    const double z = limit_curve_value(-0.5, t);
    const double r3 = std::sqrt(z * z * z), q = std::sqrt(std::max(0.0, z * z * z - t));
    const double lhs = std::pow(4.0 * r3 - 3.0 * q, 4) * std::pow(r3 + q, 3);
    worst = std::max(worst, std::abs(lhs / 256.0 - 1.0));
  }
  out.push_back(at_most("limits.bessel_identity", "(4 sqrt(z^3) - 3 sqrt(z^3 - t))^4 (sqrt(z^3) + sqrt(z^3 - t))^3 = 2^8",
                        1e-10, worst));
  double dev = 0.0;
  for (int i = 0; i <= 200; ++i) dev = std::max(dev, std::abs(limit_curve_value(50.0, i / 200.0) - 1.0));
  out.push_back(at_most("limits.large_alpha", "z_inf -> 1 uniformly on [0,1] as alpha -> infinity (alpha = 50)", 0.05,
                        dev));
}

void suite_growth(std::vector<CheckRecord>& out, const VerifyOptions& opts) {
  const GeneratingFunction f = GeneratingFunction::parse(opts.model);
  if (!f.algebraic()) throw ConfigError("verify growth: model " + f.spec() + " has no growth law");
  const asymptotics::GrowthLaw law = asymptotics::growth_law(f);
  if (opts.n_max < 10) throw ConfigError("verify growth: --n-max must be at least 10");
  const auto results = spectrum::spectrum_scan(f, 1, opts.n_max, spectrum::default_tolerance(f),
                                               spectrum::default_shooting_config(f), opts.workers);
  const int failures = static_cast<int>(std::count_if(results.begin(), results.end(), [](auto& r) { return !r.ok; }));
  out.push_back(within("growth." + f.spec() + ".scan", "E_n found and increasing for n = 1..n_max", 0.0, failures, 0.0));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& r : results) {
    if (!r.ok || r.n < opts.n_max / 5) continue;
    const double lx = std::log(static_cast<double>(r.n)), ly = std::log(r.E);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
    ++m;
  }
  const double slope = m >= 2 ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : NAN;
  out.push_back(within("growth." + f.spec() + ".exponent", "E_n ~ A n^gamma, gamma = (1+alpha)/(2 beta)",
                       law.gamma_exp, slope, 0.01));
  const auto& last = results.back();
  const double ratio = last.ok ? last.E / (law.A * std::pow(static_cast<double>(last.n), law.gamma_exp)) : NAN;
  out.push_back(within("growth." + f.spec() + ".amplitude", "E_n / (A n^gamma) -> 1", 1.0, ratio, 0.02));
}

void suite_rgamma(std::vector<CheckRecord>& out) {
  const GeneratingFunction f = GeneratingFunction::recip_gamma();
  const std::pair<int, double> eig[] = {{10, 5.50e8}, {20, 2.86e23}};
  for (const auto& [n, p] : eig) {
    const spectrum::EigenResult r = spectrum::find_eigen(f, n, spectrum::default_tolerance(f));
    out.push_back(within("rgamma.E_" + std::to_string(n), "reciprocal-gamma eigenvalue to 3 significant digits", p,
                         r.ok ? r.E : NAN, three_digits(p)));
  }
  const std::pair<int, double> asym[] = {{10, 4.98e8}, {20, 2.68e23}};
  for (const auto& [n, p] : asym)
    out.push_back(within("rgamma.asymptote_" + std::to_string(n), "E_n ~ sqrt(-(2n-1)/Gamma(r_{2n-1}))", p,
                         asymptotics::rgamma_asymptote(n), three_digits(p)));
}

// max |z - z_inf| of the n-th scaled bessel(0) separatrix over [a, b].
double deviation(int n, double a, double b, int points) {
  const GeneratingFunction f = GeneratingFunction::bessel(0.0);
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[i] = a + (b - a) * i / (points - 1);
  const ode::SolutionCurve c = spectrum::separatrix_curve(f, n, grid, spectrum::default_shooting_config(f));
  double dev = 0.0;
  for (std::size_t i = 0; i < c.grid.size(); ++i)
    dev = std::max(dev, std::abs(c.values[i] - limit_curve_value(-0.5, c.grid[i])));
  return dev;
}

void suite_envelope(std::vector<CheckRecord>& out) {
  out.push_back(at_most("envelope.sup_norm_n=2000", "scaled bessel(0) eigensolution -> z_inf on [0.1, 0.9]", 5e-3,
                        deviation(2000, 0.1, 0.9, 80001)));
  const double a1 = deviation(1000, 0.45, 0.55, 20001);
  const double a2 = deviation(2000, 0.45, 0.55, 20001);
  out.push_back(within("envelope.ratio_1000_2000", "oscillation envelope ~ 1/(beta lambda)", 2.0, a1 / a2, 0.3));
}

}  // namespace

bool VerificationReport::passed() const {
  return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["passed"] = passed();
  j["records"] = nlohmann::json::array();
  for (const auto& r : records) {
    j["records"].push_back({{"id", r.id},
                            {"reference", r.reference},
                            {"predicted", std::isfinite(r.predicted) ? nlohmann::json(r.predicted) : nlohmann::json()},
                            {"measured", std::isfinite(r.measured) ? nlohmann::json(r.measured) : nlohmann::json()},
                            {"tolerance", r.tolerance},
                            {"pass", r.pass}});
  }
  return j;
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  for (const auto& r : records) {
    os << (r.pass ? "PASS " : "FAIL ") << r.id << ": measured " << format_double(r.measured) << ", predicted "
       << format_double(r.predicted) << ", tolerance " << format_double(r.tolerance) << "  [" << r.reference << "]\n";
  }
  os << (passed() ? "PASS" : "FAIL") << " suite " << suite << " (" << records.size() << " checks)\n";
  return os.str();
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s = {"walk", "limits", "growth", "rgamma", "envelope", "all"};
  return s;
}

VerificationReport run_verify(const std::string& suite, const VerifyOptions& opts) {
  VerificationReport rep;
  rep.suite = suite;
  const bool all = suite == "all";
  if (!all && std::find(verify_suites().begin(), verify_suites().end(), suite) == verify_suites().end())
    throw ConfigError("unknown verify suite '" + suite + "'");
  if (all || suite == "walk") suite_walk(rep.records);
  if (all || suite == "limits") suite_limits(rep.records);
  if (all || suite == "growth") suite_growth(rep.records, opts);
  if (all || suite == "rgamma") suite_rgamma(rep.records);
  if (all || suite == "envelope") suite_envelope(rep.records);
  return rep;
}

}  // namespace nleig::cli
