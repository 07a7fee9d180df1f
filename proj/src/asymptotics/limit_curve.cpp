#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "nleig/asymptotics.hpp"
#include "nleig/error.hpp"

namespace nleig::asymptotics {

namespace {

bool is_one(double alpha) { return std::abs(alpha - 1.0) < 1e-12; }
bool is_three(double alpha) { return std::abs(alpha - 3.0) < 1e-12; }

void require_finite_origin(double alpha) {
  if (!(alpha > -1.0) || !std::isfinite(alpha))
    throw DomainError("limit curve requires finite alpha > -1, got " + std::to_string(alpha));
}

}  // namespace

double limit_curve_origin(double alpha) {
  require_finite_origin(alpha);
  if (is_one(alpha)) return std::sqrt(std::exp(1.0) / 2.0);
  if (is_three(alpha)) return std::exp(0.5 * (std::log(2.0) - 0.5));
  const double base = (1.0 + alpha) * std::log(2.0) - 2.0 * std::log(1.0 + alpha);
  return std::exp(base / ((1.0 - alpha) * (3.0 - alpha)));
}

double limit_curve_residual(double alpha, double t, double z) {
  if (is_one(alpha)) {
    const double v = std::sqrt(std::max(0.0, 1.0 - std::pow(t, 4)));
    return 2.0 * std::log(z) - v + std::log1p(v);
  }
  const double p = std::pow(z, 1.0 - alpha);
  const double q = std::sqrt(std::max(0.0, p * p - std::pow(t, 2.0 + 2.0 * alpha)));
  if (is_three(alpha)) return q / (p + q) - std::log(p + q);
  return 2.0 * std::log(p + 0.5 * (alpha - 1.0) * q) + (1.0 - alpha) * std::log(p + q);
}

double limit_curve_value(double alpha, double t) {
  require_finite_origin(alpha);
  if (!(t >= 0.0)) throw DomainError("limit curve requires t >= 0");
  if (t >= 1.0) return 1.0 / t;
  const double z0 = limit_curve_origin(alpha);
  if (t == 0.0) return z0;
  double lo = 1.0, hi = z0;
  if (alpha > 1.0) hi = std::min(hi, std::pow(t, -(1.0 + alpha) / (alpha - 1.0)));
  auto f = [&](double z) { return limit_curve_residual(alpha, t, z); };
  const double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    // Near t = 0 the root sits at the rounding level of z0.
    if (std::abs(fhi) < 1e-13) return hi;
    throw BracketError("limit curve: root not bracketed at t = " + std::to_string(t) +
                       " for alpha = " + std::to_string(alpha));
  }
  std::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(53),
                                             iters);
  return 0.5 * (r.first + r.second);
}

LimitCurve limit_curve(double alpha, const std::vector<double>& grid) {
  LimitCurve c;
  c.alpha = alpha;
  c.grid = grid;
  c.z.reserve(grid.size());
  for (double t : grid) c.z.push_back(limit_curve_value(alpha, t));
  c.origin_value = limit_curve_origin(alpha);
  return c;
}

void LimitCurve::write_csv(std::ostream& os, const std::string& model) const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", alpha);
  os << "# model=" << model << ", n=0, coords=limit, alpha=" << buf << "\n";
  os << "t,z\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,", grid[i]);
    os << buf;
    std::snprintf(buf, sizeof buf, "%.17g", z[i]);
    os << buf << "\n";
  }
}

OriginBehavior origin_behavior(double alpha) {
  if (alpha > -1.0) {
    const double v = limit_curve_origin(alpha);
    return {OriginKind::finite, v, 0.0, v, "z_inf(0) finite"};
  }
  if (alpha == -1.0)
    return {OriginKind::log_quartic, std::numeric_limits<double>::infinity(), 0.0, 1.0,
            "z_inf ~ (-2 ln t)^(1/4); eigenvalues at fixed t > 0 grow like (ln n)^(1/4)"};
  const double m = 1.0 - alpha;
  const double amp = std::pow(m / std::sqrt(m * m - 4.0), 1.0 / m);
  return {OriginKind::power_law, std::numeric_limits<double>::infinity(), (1.0 + alpha) / m, amp,
          "z_inf ~ amplitude * t^((1+alpha)/(1-alpha))"};
}

}  // namespace nleig::asymptotics
