#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <string>
#include <thread>

#include "nleig/asymptotics.hpp"
#include "nleig/error.hpp"
#include "nleig/spectrum.hpp"

namespace nleig::spectrum {

namespace {

using models::GeneratingFunction;
using models::ModelId;
using models::ScaledProblem;

constexpr double kWiden = 1.6;
constexpr int kMaxWidenings = 40;
constexpr double kBackwardSeedProduct = 1e6;  // x0^2 F'(s) at the seed
constexpr double kBackwardMinT0 = 3.0;

ScaledProblem shooting_problem(const GeneratingFunction& model, int n) {
  if (model.id() == ModelId::xi_bar) return ScaledProblem::identity(model);
  return ScaledProblem(model, n);
}

// Scaled initial value predicted by the growth law (or the rgamma asymptote).
std::optional<double> predicted_z0(const ScaledProblem& p) {
  if (p.is_identity()) return std::nullopt;
  if (p.model().id() == ModelId::recip_gamma) return 1.0;
  const asymptotics::GrowthLaw g = asymptotics::growth_law(p.model());
  return std::exp(std::log(g.A) + g.gamma_exp * std::log(static_cast<double>(p.n())) - p.log_y_scale());
}

double exp_or_inf(double l) {
  return l > std::log(std::numeric_limits<double>::max()) ? std::numeric_limits<double>::infinity() : std::exp(l);
}

void fill_raw_values(EigenResult& r, const ScaledProblem& p, double z_mid, double z_lo, double z_hi) {
  r.z0 = z_mid;
  r.lambda = p.is_identity() ? 0.0 : p.lambda();
  const double ly = p.log_y_scale();
  r.E = exp_or_inf(std::log(z_mid) + ly);
  r.log10_E = (std::log(z_mid) + ly) / std::log(10.0);
  r.lo = exp_or_inf(std::log(z_lo) + ly);
  r.hi = exp_or_inf(std::log(z_hi) + ly);
  r.residual = (z_hi - z_lo) / z_mid;
}

double backward_z0(const ScaledProblem& p, double t0, double z_seed, const ode::IntegratorConfig& cfg) {
  ode::IntegrateOptions opts;
  opts.sample_at = {0.0};
  opts.refine_events = false;
  const ode::SolutionCurve c = ode::integrate(p, t0, z_seed, cfg, ode::Direction::backward, opts);
  if (c.grid.empty() || c.grid.front() != 0.0) throw ConvergenceError("backward integration did not reach 0");
  return c.values.front();
}

struct Seed {
  double t0;
  double z;
};

Seed backward_seed(const ScaledProblem& p, int n, double x0) {
  const GeneratingFunction& f = p.model();
  const double s = f.unstable_zero(n);
  if (f.id() != ModelId::recip_gamma && !(f.derivative(s) > 0.0))
    throw DomainError("backward seed: F'(s_n) is not positive");
  const double log_fp = f.log_derivative_at_zero(s);
  double log_t0;
  if (x0 > 0.0) {
    log_t0 = std::log(x0) - p.log_x_scale();
  } else {
    log_t0 = std::max(std::log(kBackwardMinT0), 0.5 * (std::log(kBackwardSeedProduct) - log_fp) - p.log_x_scale());
  }
  const double t0 = std::exp(log_t0);
  const double log_x2fp = 2.0 * (log_t0 + p.log_x_scale()) + log_fp;
  if (log_x2fp < std::log(1e2)) throw DomainError("backward seed: x0 too close to the turning point");
  const double u = s * (1.0 - std::exp(-log_x2fp));
  return {t0, u / (p.c() * t0)};
}

}  // namespace

const char* to_string(Method m) { return m == Method::bisection ? "bisection" : "backward"; }

ode::IntegratorConfig default_shooting_config(const GeneratingFunction& model) {
  ode::IntegratorConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-14;
  cfg.x_max = 3.0;
  if (model.id() == ModelId::recip_gamma) cfg.rel_tol = 1e-11;
  if (model.id() == ModelId::xi_bar) {
    cfg.rel_tol = 1e-10;
    cfg.abs_tol = 1e-12;
    cfg.x_max = 4.0;
  }
  return cfg;
}

double default_tolerance(const GeneratingFunction& model) {
  switch (model.id()) {
    case ModelId::recip_gamma: return 1e-8;
    case ModelId::xi_bar: return 1e-6;
    default: return 1e-10;
  }
}

ClassifyResult classify_scaled(const ScaledProblem& problem, double z0, const ode::IntegratorConfig& cfg) {
  if (!(z0 > 0.0)) throw DomainError("classify requires a positive initial value");
  ode::IntegrateOptions opts;
  opts.record = false;
  opts.refine_events = false;
  opts.stop_when_trapped = true;
  opts.max_extensions = problem.is_identity() ? 16 : 6;
  const ode::SolutionCurve c = ode::integrate(problem, 0.0, z0, cfg, ode::Direction::forward, opts);
  return {c.basin, c.basin + problem.model().maxima_offset(), c.trapped, c.horizon};
}

ClassifyResult classify(const GeneratingFunction& model, double E, const ode::IntegratorConfig& cfg) {
  return classify_scaled(ScaledProblem::identity(model), E, cfg);
}

EigenResult find_eigen(const GeneratingFunction& model, int n, double tol, const ode::IntegratorConfig& cfg) {
  if (n < 1) throw DomainError("find_eigen: n must be >= 1");
  if (!(tol >= 1e-12 && tol < 1.0)) throw DomainError("find_eigen: tol must lie in [1e-12, 1)");
  const ScaledProblem p = shooting_problem(model, n);
  bool all_settled = true;
  auto cls = [&](double v) {
    const ClassifyResult r = classify_scaled(p, v, cfg);
    all_settled = all_settled && r.settled;
    return r.cls;
  };

  const std::optional<double> pred = predicted_z0(p);
  double lo = pred ? 0.5 * *pred : 1.0 / kWiden;
  double hi = pred ? 1.5 * *pred : 1.0;
  int widenings = 0;
  int c_lo = cls(lo);
  int c_hi = -1;
  while (c_lo >= n) {
    hi = lo;
    c_hi = c_lo;
    lo /= kWiden;
    c_lo = cls(lo);
    if (++widenings > kMaxWidenings)
      throw BracketError("find_eigen: no lower bracket for n = " + std::to_string(n) + " of " + model.spec());
  }
  if (c_hi < 0) c_hi = cls(hi);
  while (c_hi < n) {
    lo = hi;
    c_lo = c_hi;
    hi *= kWiden;
    c_hi = cls(hi);
    if (++widenings > kMaxWidenings)
      throw BracketError("find_eigen: no upper bracket for n = " + std::to_string(n) + " of " + model.spec());
  }

  int maxima_lo = c_lo + model.maxima_offset();
  while (hi - lo > tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const int c = cls(mid);
    if (c >= n) {
      hi = mid;
      c_hi = c;
    } else {
      lo = mid;
      c_lo = c;
      maxima_lo = c + model.maxima_offset();
    }
  }

  EigenResult r;
  r.n = n;
  r.method = Method::bisection;
  fill_raw_values(r, p, 0.5 * (lo + hi), lo, hi);
  r.class_lo = c_lo;
  r.class_hi = c_hi;
  r.maxima = maxima_lo;
  std::ostringstream ev;
  ev << "basin jump " << c_lo << "->" << c_hi << (all_settled ? "" : " (some shots unsettled, basin estimated)")
     << ", widenings=" << widenings;
  r.evidence = ev.str();
  if (c_lo != n - 1 || c_hi != n) {
    r.ok = false;
    std::ostringstream err;
    err << "class jump " << c_lo << "->" << c_hi << " does not isolate n = " << n;
    if (c_hi - c_lo > 1) err << " (eigenvalues " << c_lo + 1 << ".." << c_hi << " unresolved within relative width " << r.residual << ")";
    r.error = err.str();
  }
  return r;
}

EigenResult find_eigen(const GeneratingFunction& model, int n, double tol) {
  return find_eigen(model, n, tol, default_shooting_config(model));
}

EigenResult refine_backward(const GeneratingFunction& model, int n, double x0, const ode::IntegratorConfig& cfg) {
  const ScaledProblem p = shooting_problem(model, n);
  const Seed seed = backward_seed(p, n, x0);
  const double z_fine = backward_z0(p, seed.t0, seed.z, cfg);
  ode::IntegratorConfig coarse = cfg;
  coarse.rel_tol = std::min(1e-6, cfg.rel_tol * 10.0);
  coarse.abs_tol = cfg.abs_tol * 10.0;
  const double z_coarse = backward_z0(p, seed.t0, seed.z, coarse);
  const double d = std::max(std::abs(z_fine - z_coarse), 4.0 * std::numeric_limits<double>::epsilon() * z_fine);

  EigenResult r;
  r.n = n;
  r.method = Method::backward;
  fill_raw_values(r, p, z_fine, z_fine - d, z_fine + d);
  r.maxima = -1;
  std::ostringstream ev;
  ev << "separatrix seeded at t0=" << seed.t0 << " (x0=" << std::exp(std::log(seed.t0) + p.log_x_scale())
     << "), rel_tol " << cfg.rel_tol << " vs " << coarse.rel_tol;
  r.evidence = ev.str();
  return r;
}

ode::SolutionCurve separatrix_curve(const GeneratingFunction& model, int n, const std::vector<double>& grid,
                                    const ode::IntegratorConfig& cfg) {
  const ScaledProblem p = shooting_problem(model, n);
  const Seed seed = backward_seed(p, n, 0.0);
  ode::IntegrateOptions opts;
  for (double t : grid)
    if (t >= 0.0 && t <= seed.t0) opts.sample_at.push_back(t);
  ode::SolutionCurve c = ode::integrate(p, seed.t0, seed.z, cfg, ode::Direction::backward, opts);
  c.n = n;
  c.metadata += ", seed_t0=" + std::to_string(seed.t0);
  return c;
}

std::vector<EigenResult> spectrum_scan(const GeneratingFunction& model, const std::vector<int>& indices, double tol,
                                       const ode::IntegratorConfig& cfg, int workers) {
  for (int n : indices)
    if (n < 1) throw DomainError("spectrum_scan: indices must be >= 1");
  const int count = static_cast<int>(indices.size());
  std::vector<EigenResult> out(count);
  if (count == 0) return out;
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < count; i = next++) {
      const int n = indices[i];
      try {
        out[i] = find_eigen(model, n, tol, cfg);
      } catch (const std::exception& e) {
        out[i] = EigenResult{};
        out[i].n = n;
        out[i].ok = false;
        out[i].error = e.what();
      }
    }
  };
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, count);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return out;
}

std::vector<EigenResult> spectrum_scan(const GeneratingFunction& model, int n_first, int n_last, double tol,
                                       const ode::IntegratorConfig& cfg, int workers) {
  if (n_first < 1 || n_last < n_first) throw DomainError("spectrum_scan: empty or invalid index range");
  std::vector<int> indices;
  for (int n = n_first; n <= n_last; ++n) indices.push_back(n);
  std::vector<EigenResult> out = spectrum_scan(model, indices, tol, cfg, workers);
  check_monotone(out);
  return out;
}

void check_monotone(std::vector<EigenResult>& results) {
  for (std::size_t i = 1; i < results.size(); ++i) {
    EigenResult& cur = results[i];
    const EigenResult& prev = results[i - 1];
    if (cur.ok && prev.ok && cur.n == prev.n + 1 && !(cur.log10_E > prev.log10_E)) {
      cur.ok = false;
      cur.error = "spectrum not increasing at n = " + std::to_string(cur.n);
    }
  }
}

}  // namespace nleig::spectrum
