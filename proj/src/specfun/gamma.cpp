#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nleig/error.hpp"
#include "nleig/specfun.hpp"

namespace nleig::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
const double kLogMax = std::log(std::numeric_limits<double>::max());

bool near_nonpositive_integer(double x, double tol) {
  return x <= tol && std::abs(x - std::nearbyint(x)) < tol;
}

}  // namespace

Accuracy::Accuracy(double rel, double abs_floor_) : rel_tol(rel), abs_floor(abs_floor_) {
  if (!(rel >= 1e-15 && rel <= 1e-6)) throw DomainError("Accuracy: rel_tol outside [1e-15, 1e-6]");
  if (!(abs_floor_ >= 1e-300 && abs_floor_ <= 1e-8))
    throw DomainError("Accuracy: abs_floor outside [1e-300, 1e-8]");
}

double SignedLog::value() const {
  if (sign == 0) return 0.0;
  if (log_abs > kLogMax)
    throw OverflowError("value exceeds binary64 range (ln|v| = " + std::to_string(log_abs) + ")");
  return sign * std::exp(log_abs);
}

double sin_pi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  if (std::abs(x) >= 4503599627370496.0) return 0.0;  // 2^52: every double is an integer
  const double n = std::nearbyint(x);
  const double r = x - n;
  if (r == 0.0) return 0.0;
  const double s = std::sin(kPi * r);
  return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

double cos_pi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  if (std::abs(x) >= 4503599627370496.0) return std::fmod(x, 2.0) == 0.0 ? 1.0 : -1.0;
  const double n = std::nearbyint(x);
  const double r = x - n;
  if (std::abs(r) == 0.5) return 0.0;
  const double c = std::cos(kPi * r);
  return std::fmod(n, 2.0) == 0.0 ? c : -c;
}

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("log_gamma: argument must be finite and > 0, got " + std::to_string(x));
  return std::lgamma(x);
}

SignedLog gamma_signed_log(double x) {
  if (std::isnan(x)) throw DomainError("gamma_signed_log: NaN");
  if (x > 0.0) return {1, std::lgamma(x)};
  if (x == std::nearbyint(x)) throw DomainError("gamma_signed_log: pole at nonpositive integer");
  // Gamma(x) Gamma(1 - x) = pi / sin(pi x)
  const double s = sin_pi(x);
  return {s > 0.0 ? 1 : -1, std::log(kPi) - std::log(std::abs(s)) - std::lgamma(1.0 - x)};
}

SignedLog recip_gamma_log(double u) {
  if (!(u >= -1.0) || !std::isfinite(u))
    throw DomainError("recip_gamma: argument must be finite and >= -1, got " + std::to_string(u));
  if (u < 0.0) return {1, -std::lgamma(-u)};  // Gamma(-u) > 0 on (0, 1]
  const double s = sin_pi(u);
  if (s == 0.0) return {0, -std::numeric_limits<double>::infinity()};
  return {s > 0.0 ? -1 : 1, std::log(std::abs(s)) - std::log(kPi) + std::lgamma(1.0 + u)};
}

double recip_gamma(double u) { return recip_gamma_log(u).value(); }

double digamma(double x) {
  if (std::isnan(x)) throw DomainError("digamma: NaN");
  if (near_nonpositive_integer(x, 1e-12))
    throw DomainError("digamma: pole near nonpositive integer " + std::to_string(x));
  if (x < 0.0) return digamma(1.0 - x) - kPi * cos_pi(x) / sin_pi(x);
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double r = 1.0 / (x * x);
  const double tail =
      r * (1.0 / 12 -
           r * (1.0 / 120 -
                r * (1.0 / 252 -
                     r * (1.0 / 240 - r * (1.0 / 132 - r * (691.0 / 32760 - r * (1.0 / 12)))))));
  return acc + std::log(x) - 0.5 / x - tail;
}

double trigamma(double x) {
  if (std::isnan(x)) throw DomainError("trigamma: NaN");
  if (near_nonpositive_integer(x, 1e-12))
    throw DomainError("trigamma: pole near nonpositive integer " + std::to_string(x));
  if (x < 0.0) {
    const double s = sin_pi(x);
    return kPi * kPi / (s * s) - trigamma(1.0 - x);
  }
  double acc = 0.0;
  while (x < 10.0) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  const double r = 1.0 / (x * x);
  const double series =
      1.0 / x + 0.5 * r +
      (r / x) * (1.0 / 6 -
                 r * (1.0 / 30 -
                      r * (1.0 / 42 - r * (1.0 / 30 - r * (5.0 / 66 - r * (691.0 / 2730 - r * (7.0 / 6)))))));
  return acc + series;
}

double digamma_root_seed(double k) {
  return -k + std::atan(kPi / std::log(k + 0.125)) / kPi;
}

double digamma_root(int k) {
  if (k < 1 || k > 500) throw DomainError("digamma_root: index must lie in [1, 500]");
  double lo = -k + 1e-9;
  double hi = -k + 1.0 - 1e-9;
  double r = digamma_root_seed(k);
  if (!(r > lo && r < hi)) r = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double f = digamma(r);
    if (f < 0.0)
      lo = r;
    else
      hi = r;
    double next = r - f / trigamma(r);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - r) <= 4e-16 * std::abs(r) || hi - lo <= 4e-16 * std::abs(r)) {
      r = next;
      if (std::abs(digamma(r)) > 1e-10)
        throw ConvergenceError("digamma_root: residual above 1e-10 at k=" + std::to_string(k));
      return r;
    }
    r = next;
  }
  throw ConvergenceError("digamma_root: no convergence for k=" + std::to_string(k));
}

}  // namespace nleig::specfun
