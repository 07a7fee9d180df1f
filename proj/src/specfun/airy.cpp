#include <cmath>
#include <numbers>
#include <string>

#include "detail.hpp"
#include "nleig/error.hpp"
#include "nleig/specfun.hpp"

namespace nleig::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt3 = 1.7320508075688772;
// Ai(0) = 3^(-2/3) / Gamma(2/3), -Ai'(0) = 3^(-1/3) / Gamma(1/3)
constexpr double kAi0 = 0.35502805388781723926;
constexpr double kAip0 = 0.25881940379280679840;

struct AiryPair {
  double ai;
  double aip;
};

// Maclaurin pair Ai = c1 f - c2 g with their derivatives.
AiryPair maclaurin(double x) {
  const double x3 = x * x * x;
  double f = 1.0, g = x, fp = 0.0, gp = 1.0;
  double tf = 1.0, tg = x;
  double tfp = 0.5 * x * x, tgp = 1.0;
  fp = tfp;
  for (int k = 1; k < 200; ++k) {
    tf *= x3 / ((3.0 * k - 1.0) * (3.0 * k));
    tg *= x3 / ((3.0 * k) * (3.0 * k + 1.0));
    if (k > 1) tfp *= x3 / ((3.0 * k - 3.0) * (3.0 * k - 1.0));
    tgp *= x3 / ((3.0 * k - 2.0) * (3.0 * k));
    f += tf;
    g += tg;
    if (k > 1) fp += tfp;
    gp += tgp;
    if (std::abs(tf) + std::abs(tg) + std::abs(tfp) + std::abs(tgp) < 1e-18) break;
  }
  return {kAi0 * f - kAip0 * g, kAi0 * fp - kAip0 * gp};
}

// K_nu(z) = int_0^inf exp(-z cosh s) cosh(nu s) ds by the trapezoidal rule;
// the integrand is analytic in a strip, so the error is exp(-pi^2 / h).
double bessel_k_trapezoid(double nu, double z) {
  constexpr double h = 0.125;
  double sum = 0.5 * std::exp(-z);
  for (int i = 1; i < 10000; ++i) {
    double s = i * h;
    double arg = z * std::cosh(s);
    if (arg - z > 745.0) break;
    double term = std::exp(-arg) * std::cosh(nu * s);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return h * sum;
}

// zeta = (2/3) u^{3/2} carried in double-double.
detail::DoubleDouble zeta_dd(double u) {
  const double s = std::sqrt(u);
  const double s_lo = std::fma(-s, s, u) / (2.0 * s);
  detail::DoubleDouble p = detail::dd_mul({2.0 * u, 0.0}, {s, s_lo});
  const double q = p.hi / 3.0;
  const double r = std::fma(-3.0, q, p.hi);
  return detail::two_sum(q, (r + p.lo) / 3.0);
}

void check(double x) {
  if (!(x >= -1e5 && x <= 10.0))
    throw DomainError("airy_ai: argument must lie in [-1e5, 10], got " + std::to_string(x));
}

}  // namespace

double airy_ai(double x) {
  check(x);
  if (x >= -3.0 && x <= 2.0) return maclaurin(x).ai;
  if (x > 2.0) {
    const double z = 2.0 / 3.0 * x * std::sqrt(x);
    return std::sqrt(x / 3.0) / kPi * bessel_k_trapezoid(1.0 / 3.0, z);
  }
  const double u = -x;
  const auto jy = detail::bessel_jy_dd(1.0 / 3.0, zeta_dd(u));
  return 0.5 * std::sqrt(u) * (jy.j - jy.y / kSqrt3);
}

double airy_ai_prime(double x) {
  check(x);
  if (x >= -3.0 && x <= 2.0) return maclaurin(x).aip;
  if (x > 2.0) {
    const double z = 2.0 / 3.0 * x * std::sqrt(x);
    return -x / (kPi * kSqrt3) * bessel_k_trapezoid(2.0 / 3.0, z);
  }
  const double u = -x;
  const auto jy = detail::bessel_jy_dd(2.0 / 3.0, zeta_dd(u));
  return 0.5 * u * (jy.j + jy.y / kSqrt3);
}

}  // namespace nleig::specfun
