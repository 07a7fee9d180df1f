#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "detail.hpp"
#include "nleig/error.hpp"
#include "nleig/specfun.hpp"

namespace nleig::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxOrder = 50.0;

// Power series; used where x^2/4 does not exceed the order scale so that the
// alternating terms shrink from the first one.
double series_j(double nu, double x) {
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  return sum * std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0));
}

bool use_series(double nu, double x) { return x <= 2.0 || x * x <= nu + 1.0; }

double hankel_threshold(double nu) { return std::max(25.0, 0.25 * nu * nu); }

struct HankelPQ {
  double p;
  double q;
};

// Hankel P and Q sums, truncated when terms stop shrinking.
HankelPQ hankel_pq(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0, term = 1.0, last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (8.0 * k * x);
    double mag = std::abs(term);
    if (mag > last) break;
    last = mag;
    // sign pattern: k = 1 -> +Q, 2 -> -P, 3 -> -Q, 4 -> +P, ...
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      case 0: p += term; break;
    }
    if (mag < 1e-17) break;
  }
  return {p, q};
}

BesselJY hankel_jy(double nu, detail::DoubleDouble x) {
  const double xd = x.hi + x.lo;
  HankelPQ pq = hankel_pq(nu, xd);
  double c, s;
  detail::cos_sin_shifted(x, 0.5 * nu + 0.25, c, s);
  const double amp = std::sqrt(2.0 / (kPi * xd));
  return {amp * (pq.p * c - pq.q * s), amp * (pq.p * s + pq.q * c)};
}

// Continued-fraction method of Steed (Barnett's CF1 for J'/J, complex CF2 for
// p + iq), valid for x >= 2.
BesselJY steed_jy(double nu, double x) {
  constexpr int kMaxIt = 200000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = std::numeric_limits<double>::min() / kEps;

  const int nl = std::max(0, static_cast<int>(nu - x + 1.5));
  const double xmu = nu - nl;
  const double xmu2 = xmu * xmu;
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;
  const double w = xi2 / kPi;

  int isign = 1;
  double h = std::max(nu * xi, kTiny);
  double b = xi2 * nu, d = 0.0, c = h;
  int it = 0;
  for (; it < kMaxIt; ++it) {
    b += xi2;
    d = b - d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b - 1.0 / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double del = c * d;
    h *= del;
    if (d < 0.0) isign = -isign;
    if (std::abs(del - 1.0) <= kEps) break;
  }
  if (it >= kMaxIt) throw ConvergenceError("bessel: CF1 did not converge");

  double rjl = isign * kTiny;
  double rjpl = h * rjl;
  const double rjl1 = rjl;
  double fact = nu * xi;
  for (int l = nl - 1; l >= 0; --l) {
    double tmp = fact * rjl + rjpl;
    fact -= xi;
    rjpl = fact * tmp - rjl;
    rjl = tmp;
  }
  if (rjl == 0.0) rjl = kEps;
  const double f = rjpl / rjl;

  double a = 0.25 - xmu2;
  double p = -0.5 * xi, q = 1.0;
  const double br = 2.0 * x;
  double bi = 2.0;
  fact = a * xi / (p * p + q * q);
  double cr = br + q * fact, ci = bi + p * fact;
  double den = br * br + bi * bi;
  double dr = br / den, di = -bi / den;
  double dlr = cr * dr - ci * di, dli = cr * di + ci * dr;
  double tmp = p * dlr - q * dli;
  q = p * dli + q * dlr;
  p = tmp;
  for (it = 1; it < kMaxIt; ++it) {
    a += 2 * it;
    bi += 2.0;
    dr = a * dr + br;
    di = a * di + bi;
    if (std::abs(dr) + std::abs(di) < kTiny) dr = kTiny;
    fact = a / (cr * cr + ci * ci);
    cr = br + cr * fact;
    ci = bi - ci * fact;
    if (std::abs(cr) + std::abs(ci) < kTiny) cr = kTiny;
    den = dr * dr + di * di;
    dr /= den;
    di /= -den;
    dlr = cr * dr - ci * di;
    dli = cr * di + ci * dr;
    tmp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = tmp;
    if (std::abs(dlr - 1.0) + std::abs(dli) <= kEps) break;
  }
  if (it >= kMaxIt) throw ConvergenceError("bessel: CF2 did not converge");

  const double gam = (p - f) / q;
  double rjmu = std::sqrt(w / ((p - f) * gam + q));
  rjmu = std::copysign(rjmu, rjl);
  double rymu = rjmu * gam;
  const double rymup = rymu * (p + q / gam);
  double ry1 = xmu * xi * rymu - rymup;
  const double rj = rjl1 * (rjmu / rjl);
  for (int i = 1; i <= nl; ++i) {
    double t = (xmu + i) * xi2 * ry1 - rymu;
    rymu = ry1;
    ry1 = t;
  }
  return {rj, rymu};
}

double j_unchecked(double nu, double x) {
  if (use_series(nu, x)) return series_j(nu, x);
  if (x >= hankel_threshold(nu)) return hankel_jy(nu, {x, 0.0}).j;
  return steed_jy(nu, x).j;
}

void check_args(double nu, double x) {
  if (!(x >= 0.0) || !std::isfinite(x))
    throw DomainError("bessel_j: argument must be finite and >= 0, got " + std::to_string(x));
  if (!(nu >= 0.0 && nu <= kMaxOrder))
    throw DomainError("bessel_j: order must lie in [0, 50], got " + std::to_string(nu));
}

}  // namespace

double bessel_j(double nu, double x) {
  check_args(nu, x);
  return j_unchecked(nu, x);
}

double bessel_j_prime(double nu, double x) {
  check_args(nu, x);
  if (x == 0.0) {
    if (nu == 0.0 || nu > 1.0) return 0.0;
    if (nu == 1.0) return 0.5;
    return std::numeric_limits<double>::infinity();
  }
  return (nu / x) * j_unchecked(nu, x) - j_unchecked(nu + 1.0, x);
}

BesselJY bessel_jy(double nu, double x) {
  check_args(nu, x);
  if (x < 2.0) throw DomainError("bessel_jy: requires x >= 2");
  if (x >= hankel_threshold(nu)) return hankel_jy(nu, {x, 0.0});
  return steed_jy(nu, x);
}

namespace detail {
// Exposed to airy.cpp: J and Y with the argument carried in double-double.
BesselJY bessel_jy_dd(double nu, DoubleDouble x) {
  const double xd = x.hi + x.lo;
  if (xd >= hankel_threshold(nu)) return hankel_jy(nu, x);
  return steed_jy(nu, xd);
}
}  // namespace detail

}  // namespace nleig::specfun
