#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nleig/error.hpp"
#include "nleig/specfun.hpp"

namespace nleig::specfun {

namespace {

constexpr double kInvE = 0.36787944117144232160;

// Series about the branch point in p = +-sqrt(2 (e x + 1)).
double branch_point_series(double p) {
  return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0))));
}

double halley(double x, double w) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double best_w = w;
  double best_f = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 60; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::abs(f) < best_f) {
      best_f = std::abs(f);
      best_w = w;
    }
    if (std::abs(f) <= 2.0 * eps * std::abs(x)) return w;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= eps * std::abs(w)) break;
  }
  // Near the branch point the residual is limited by rounding of x itself.
  if (best_f <= 1e-13 * std::abs(x)) return best_w;
  throw ConvergenceError("lambert_w: Halley iteration did not converge");
}

}  // namespace

double lambert_w(LambertBranch branch, double x) {
  if (std::isnan(x)) throw DomainError("lambert_w: NaN");
  if (x < -kInvE) {
    // Allow the rounding of -1/e itself.
    if (x < -kInvE * (1.0 + 4 * std::numeric_limits<double>::epsilon()))
      throw DomainError("lambert_w: argument below the branch point -1/e: " + std::to_string(x));
    return -1.0;
  }
  const double q = 2.0 * (std::numbers::e * x + 1.0);
  const double p = q > 0.0 ? std::sqrt(q) : 0.0;

  if (branch == LambertBranch::principal) {
    if (x == 0.0) return 0.0;
    if (p < 0.3) return p < 1e-8 ? branch_point_series(p) : halley(x, branch_point_series(p));
    double w0;
    if (x < 3.0)
      w0 = std::log1p(x);
    else {
      const double l = std::log(x);
      w0 = l - std::log(l);
    }
    if (x < -0.25) w0 = branch_point_series(p);
    return halley(x, w0);
  }

  if (!(x < 0.0)) throw DomainError("lambert_w: minus-one branch needs -1/e <= x < 0");
  if (p < 0.3) return p < 1e-8 ? branch_point_series(-p) : halley(x, branch_point_series(-p));
  const double l1 = std::log(-x);
  const double w0 = x > -0.1 ? l1 - std::log(-l1) : branch_point_series(-p);
  return halley(x, w0);
}

}  // namespace nleig::specfun
