#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "nleig/error.hpp"
#include "nleig/ode.hpp"

namespace nleig::ode {

namespace {

using models::ModelId;
using models::ScaledProblem;

const double kLogMax = std::log(std::numeric_limits<double>::max());

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

// PI step control constants (Hairer-Wanner).
constexpr double kBeta = 0.04;
constexpr double kExpo1 = 0.2 - kBeta * 0.75;
constexpr double kSafe = 0.9;
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 10.0;

struct Hermite {
  double t0, z0, f0, t1, z1, f1;

  double operator()(double t) const {
    const double h = t1 - t0;
    const double s = (t - t0) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * z0 + (s3 - 2 * s2 + s) * h * f0 + (-2 * s3 + 3 * s2) * z1 +
           (s3 - s2) * h * f1;
  }
};

// Fourth-order continuous extension of the Dormand-Prince step.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

struct DopriDense {
  double t0, h, r1, r2, r3, r4, r5;

  DopriDense(double t, double hh, double z, double z1, const double (&k)[7])
      : t0(t), h(hh), r1(z), r2(z1 - z) {
    r3 = h * k[0] - r2;
    r4 = r2 - h * k[6] - r3;
    r5 = h * (d1 * k[0] + d3 * k[2] + d4 * k[3] + d5 * k[4] + d6 * k[5] + d7 * k[6]);
  }

  double operator()(double t) const {
    const double s = (t - t0) / h, s1 = 1.0 - s;
    return r1 + s * (r2 + s1 * (r3 + s * (r4 + s1 * r5)));
  }
};

// Follows u = c t z through the basins [s_k, s_{k+1}) and applies the barrier
// test: the solution is trapped once some u_b in [max(u, m_k), s_{k+1}) has
// du/dt < 0, because u/x + x F(u_b) only decreases in x afterwards and u
// cannot fall below s_k.
class BasinTracker {
 public:
  explicit BasinTracker(const ScaledProblem& p) : p_(p) { table_ = p_.model().zeros_count(4); }

  bool trapped() const { return trapped_; }
  int basin() const { return k_; }
  double stable_zero() const { return table_.stable[k_]; }

  void update(double t, double z, double f) {
    if (trapped_) return;
    const double u = p_.c() * t * z;
    while (u >= table_.unstable[k_ + 1]) {
      ++k_;
      ensure(k_ + 2);
    }
    if (t <= 0.0) return;
    const double m = table_.lobe_min[k_];
    if (u >= m)
      trapped_ = z + t * f < 0.0;
    else
      trapped_ = m / (p_.c() * t) + t * lobe_rhs(k_) < 0.0;
  }

  // Basin guess for a solution still untrapped at (t, z): above the
  // separatrix position s_j (1 - 1/(x^2 F'(s_j))) counts as past s_j.
  int estimate(double t, double z) {
    const double u = p_.c() * t * z;
    if (!(t > 0.0)) return 0;
    int k = 0;
    for (int j = 1;; ++j) {
      ensure(j + 1);
      const double s = table_.unstable[j];
      const double log_x2fp = 2.0 * (p_.log_x_scale() + std::log(t)) + p_.model().log_derivative_at_zero(s);
      const double sep = s * (1.0 - std::exp(-log_x2fp));
      if (u > sep)
        k = j;
      else
        break;
    }
    return k;
  }

 private:
  void ensure(int count) {
    if (static_cast<int>(table_.unstable.size()) < count + 1) table_ = p_.model().zeros_count(2 * count);
  }

  double lobe_rhs(int k) {
    while (static_cast<int>(lobe_rhs_.size()) <= k) {
      const int j = static_cast<int>(lobe_rhs_.size());
      double v;
      if (p_.model().id() == ModelId::recip_gamma) {
        const double l = table_.lobe_min_log[j] - p_.log_xi();
        v = l > kLogMax ? -std::numeric_limits<double>::infinity() : -std::exp(l);
      } else {
        v = p_.rhs_at_u(table_.lobe_min[j]);
      }
      lobe_rhs_.push_back(v);
    }
    return lobe_rhs_[k];
  }

  const ScaledProblem& p_;
  models::ZeroTable table_;
  std::vector<double> lobe_rhs_;
  int k_ = 0;
  bool trapped_ = false;
};

double initial_step(const ScaledProblem& p, double t0, double z0, double f0, double sgn, double span,
                    const IntegratorConfig& cfg) {
  const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(z0);
  const double d0 = std::abs(z0) / sc;
  const double d1 = std::abs(f0) / sc;
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, span);
  const double z1 = z0 + sgn * h0 * f0;
  const double f1 = p.rhs(t0 + sgn * h0, z1);
  const double d2 = std::abs(f1 - f0) / sc / h0;
  const double dm = std::max(d1, d2);
  const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
  return std::min({100.0 * h0, h1, span});
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(rel_tol >= 1e-13 && rel_tol <= 1e-6)) throw DomainError("rel_tol must lie in [1e-13, 1e-6]");
  if (!(abs_tol > 0.0)) throw DomainError("abs_tol must be positive");
  if (!(h_min > 0.0)) throw DomainError("h_min must be positive");
  if (!(x_max > 0.0)) throw DomainError("x_max must be positive");
  if (h_init < 0.0 || h_max < 0.0) throw DomainError("h_init and h_max must be >= 0");
  if (max_steps <= 0) throw DomainError("max_steps must be positive");
}

const char* to_string(Coords c) {
  switch (c) {
    case Coords::raw: return "raw";
    case Coords::scaled: return "scaled";
    case Coords::limit: return "limit";
  }
  return "?";
}

SolutionCurve integrate(const ScaledProblem& p, double t0, double z0, const IntegratorConfig& cfg,
                        Direction dir, const IntegrateOptions& opts) {
  cfg.validate();
  if (!(z0 >= 0.0) || !std::isfinite(z0)) throw DomainError("initial value must be finite and >= 0");
  if (!(t0 >= 0.0)) throw DomainError("initial abscissa must be >= 0");
  const bool forward = dir == Direction::forward;
  if (!forward && !(t0 > 0.0)) throw DomainError("backward integration requires x0 > 0");
  double t_end = forward ? cfg.x_max : 0.0;
  if (forward && !(t_end > t0)) throw DomainError("horizon must lie beyond the initial abscissa");
  const double sgn = forward ? 1.0 : -1.0;

  SolutionCurve curve;
  curve.coords = p.is_identity() ? Coords::raw : Coords::scaled;
  curve.model = p.model().spec();
  curve.n = p.n();

  std::vector<std::pair<double, double>> samples;
  const bool dense_samples = opts.record && !opts.sample_at.empty();
  std::vector<double> sample_at = opts.sample_at;
  std::sort(sample_at.begin(), sample_at.end());

  auto in_step = [](double a, double b, double x) { return (a <= x && x <= b) || (b <= x && x <= a); };
  if (opts.record && !dense_samples) samples.emplace_back(t0, z0);
  if (dense_samples)
    for (double s : sample_at)
      if (s == t0) samples.emplace_back(t0, z0);

  std::optional<BasinTracker> tracker;
  if (forward && opts.track_basin) tracker.emplace(p);

  double t = t0, z = z0;
  double fz = p.rhs(t, z);
  if (tracker) tracker->update(t, z, fz);
  double span = std::abs(t_end - t0);
  double h = cfg.h_init > 0.0 ? cfg.h_init : initial_step(p, t, z, fz, sgn, span, cfg);
  double facold = 1e-4;
  int extensions = 0;
  const double event_tol = 1e-10 * std::max(std::abs(t0), std::abs(t_end));

  for (;;) {
    if (sgn * (t_end - t) <= 0.0) {
      if (tracker && opts.stop_when_trapped && !tracker->trapped() && extensions < opts.max_extensions) {
        t_end *= 2.0;
        ++extensions;
        continue;
      }
      break;
    }
    if (tracker && opts.stop_when_trapped && tracker->trapped()) break;
    if (++curve.steps > cfg.max_steps)
      throw ConvergenceError("integrate: step budget exhausted at " + format_double(t));

    if (cfg.h_max > 0.0) h = std::min(h, cfg.h_max);
    double hh = sgn * h;
    bool last = false;
    if (sgn * (t + hh - t_end) >= 0.0) {
      hh = t_end - t;
      last = true;
    }

    // Trial stages may leave the domain of F or overflow it; such a step is
    // rejected and retried with a smaller h.
    const double k1 = fz;
    double k2, k3, k4, k5, k6, k7, z1, t1;
    try {
      k2 = p.rhs(t + c2 * hh, z + hh * a21 * k1);
      k3 = p.rhs(t + c3 * hh, z + hh * (a31 * k1 + a32 * k2));
      k4 = p.rhs(t + c4 * hh, z + hh * (a41 * k1 + a42 * k2 + a43 * k3));
      k5 = p.rhs(t + c5 * hh, z + hh * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      k6 = p.rhs(t + hh, z + hh * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      z1 = z + hh * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
      t1 = last ? t_end : t + hh;
      k7 = p.rhs(t1, z1);
    } catch (const PrecisionExhausted&) {
      h = std::abs(hh) * 0.25;
      if (h < cfg.h_min) throw;
      continue;
    } catch (const DomainError&) {
      h = std::abs(hh) * 0.25;
      if (h < cfg.h_min) throw StepUnderflow("integrate: step size below h_min at " + format_double(t), t);
      continue;
    }
    const double err_est = hh * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(z), std::abs(z1));
    const double err = std::abs(err_est) / sc;

    const double fac11 = std::pow(std::max(err, 1e-300), kExpo1);
    if (err <= 1.0 && std::isfinite(z1)) {
      double fac = fac11 / std::pow(facold, kBeta);
      fac = std::clamp(fac / kSafe, 1.0 / kFacMax, 1.0 / kFacMin);
      facold = std::max(err, 1e-4);

      const Hermite dense{t, z, fz, t1, z1, k7};
      // Extrema of z, located in increasing-t orientation.
      const double ta = std::min(t, t1), tb = std::max(t, t1);
      const double fa = forward ? fz : k7, fb = forward ? k7 : fz;
      const bool is_max = fa > 0.0 && fb <= 0.0;
      const bool is_min = fa < 0.0 && fb >= 0.0;
      if (is_max || is_min) {
        double lo = ta, hi = tb, where;
        if (opts.refine_events) {
          for (int it = 0; it < 200 && hi - lo > event_tol; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double g = p.rhs(mid, dense(mid));
            if ((g > 0.0) == (fa > 0.0))
              lo = mid;
            else
              hi = mid;
          }
          where = 0.5 * (lo + hi);
        } else {
          where = fb == fa ? tb : ta + (tb - ta) * fa / (fa - fb);
        }
        curve.extrema.push_back({where, dense(where), is_max});
        if (is_max) curve.maxima.push_back(where);
      }

      if (dense_samples) {
        const DopriDense interp(t, hh, z, z1, {k1, k2, k3, k4, k5, k6, k7});
        auto it = std::lower_bound(sample_at.begin(), sample_at.end(), ta);
        for (; it != sample_at.end() && *it <= tb; ++it)
          if (in_step(t, t1, *it) && *it != t0) samples.emplace_back(*it, *it == t1 ? z1 : interp(*it));
      } else if (opts.record) {
        samples.emplace_back(t1, z1);
      }

      t = t1;
      z = z1;
      fz = k7;
      if (tracker) tracker->update(t, z, fz);
      h = std::abs(hh) / fac;
      if (last && !forward) break;
    } else {
      h = std::abs(hh) / std::min(1.0 / kFacMin, fac11 / kSafe);
      if (!std::isfinite(z1)) h = std::abs(hh) * 0.25;
    }
    if (h < cfg.h_min)
      throw StepUnderflow("integrate: step size below h_min at " + format_double(t), t);
  }

  curve.horizon = t;
  curve.last_u = p.c() * t * z;
  if (tracker) {
    curve.trapped = tracker->trapped();
    if (curve.trapped) {
      curve.basin = tracker->basin();
      curve.terminal_u = tracker->stable_zero();
    } else {
      curve.basin = tracker->estimate(t, z);
    }
  }

  if (opts.record) {
    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end(),
                              [](const auto& a, const auto& b) { return a.first == b.first; }),
                  samples.end());
    curve.grid.reserve(samples.size());
    curve.values.reserve(samples.size());
    for (const auto& [a, b] : samples) {
      curve.grid.push_back(a);
      curve.values.push_back(b);
    }
  }
  if (!forward) {
    std::reverse(curve.extrema.begin(), curve.extrema.end());
    std::reverse(curve.maxima.begin(), curve.maxima.end());
    curve.last_u = p.c() * t * z;
  }
  std::ostringstream meta;
  meta << "direction=" << (forward ? "forward" : "backward") << ", horizon=" << format_double(t_end)
       << ", extensions=" << extensions << ", steps=" << curve.steps;
  curve.metadata = meta.str();
  return curve;
}

SolutionCurve integrate(const models::GeneratingFunction& model, double x0, double y0,
                        const IntegratorConfig& cfg, Direction dir, const IntegrateOptions& opts) {
  return integrate(ScaledProblem::identity(model), x0, y0, cfg, dir, opts);
}

int count_maxima(const SolutionCurve& curve) {
  if (curve.extrema.empty()) return 0;
  double vmax = 0.0;
  for (double v : curve.values) vmax = std::max(vmax, std::abs(v));
  for (const auto& e : curve.extrema) vmax = std::max(vmax, std::abs(e.value));
  const double floor = 1e-12 * vmax;
  const double first = curve.values.empty() ? curve.extrema.front().value : curve.values.front();
  const double last = curve.values.empty() ? curve.extrema.back().value : curve.values.back();
  int count = 0;
  const auto& ex = curve.extrema;
  for (std::size_t i = 0; i < ex.size(); ++i) {
    if (!ex[i].is_max) continue;
    double left = first, right = last;
    for (std::size_t j = i; j-- > 0;)
      if (!ex[j].is_max) {
        left = ex[j].value;
        break;
      }
    for (std::size_t j = i + 1; j < ex.size(); ++j)
      if (!ex[j].is_max) {
        right = ex[j].value;
        break;
      }
    if (ex[i].value - std::max(left, right) > floor) ++count;
  }
  return count;
}

std::optional<double> attractor_limit(const SolutionCurve& curve, const models::GeneratingFunction& model) {
  if (curve.terminal_u) return curve.terminal_u;
  const double u = curve.last_u;
  const models::ZeroTable t = model.zeros_upto(std::max(u, 0.0));
  for (std::size_t k = 0; k + 1 < t.unstable.size() && k < t.stable.size(); ++k) {
    const double s = t.stable[k];
    const double gap_lo = s - t.unstable[k];
    const double gap_hi = t.unstable[k + 1] - s;
    if (u >= s - 0.5 * gap_lo && u <= s + 0.5 * gap_hi) return s;
  }
  return std::nullopt;
}

void SolutionCurve::write_csv(std::ostream& os) const {
  os << "# model=" << model << ", n=" << n << ", coords=" << to_string(coords) << "\n";
  os << (coords == Coords::raw ? "x,y" : "t,z") << "\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    os << format_double(grid[i]) << "," << format_double(values[i]) << "\n";
}

}  // namespace nleig::ode
