#include <atomic>
#include <cmath>
#include <complex>
#include <iostream>
#include <numbers>
#include <string>

#include "nleig/error.hpp"
#include "nleig/specfun.hpp"

namespace nleig::specfun {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// B_{2k} / (2k)!, k = 1..16
constexpr double kBernoulliOverFactorial[] = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0,
    657931.0 / 186134520519971831808000000.0,
    -3392780147.0 / 37893265687455865519472640000000.0,
    1723168255201.0 / 759790291646040068357842010112000000.0,
    -7709321041217.0 / 134196726836183700385281186201600000000.0,
};

// Real part of psi(p) in the Riemann-Siegel remainder,
// cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p), evaluated without cancellation
// at the removable singularities p = 1/4 and p = 3/4.
double rs_psi(double p) {
  const double e1 = p - 0.25;
  if (std::abs(e1) < 0.1) {
    if (e1 == 0.0) return 0.5;
    return std::sin(kPi * e1 - 2.0 * kPi * e1 * e1) / std::sin(2.0 * kPi * e1);
  }
  const double e3 = p - 0.75;
  if (std::abs(e3) < 0.1) {
    if (e3 == 0.0) return 0.5;
    return std::sin(kPi * e3 + 2.0 * kPi * e3 * e3) / std::sin(2.0 * kPi * e3);
  }
  return std::cos(2.0 * kPi * (p * p - p - 0.0625)) / std::cos(2.0 * kPi * p);
}

double rs_psi_third_derivative(double p) {
  constexpr double h = 1e-3;
  return (rs_psi(p + 2 * h) - 2.0 * rs_psi(p + h) + 2.0 * rs_psi(p - h) - rs_psi(p - 2 * h)) /
         (2.0 * h * h * h);
}

std::atomic<bool> g_warned_large_t{false};

}  // namespace

cplx log_gamma_complex(cplx z) {
  if (!(z.real() > 0.0)) throw DomainError("log_gamma_complex: requires Re z > 0");
  cplx shift = 0.0;
  while (std::abs(z) < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const cplx zinv = 1.0 / z;
  const cplx zinv2 = zinv * zinv;
  // Stirling series: sum B_{2k} / (2k (2k-1) z^{2k-1})
  const cplx series =
      zinv * (1.0 / 12.0 +
              zinv2 * (-1.0 / 360.0 +
                       zinv2 * (1.0 / 1260.0 +
                                zinv2 * (-1.0 / 1680.0 +
                                         zinv2 * (1.0 / 1188.0 +
                                                  zinv2 * (-691.0 / 360360.0 + zinv2 * (1.0 / 156.0)))))));
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series - shift;
}

cplx zeta_euler_maclaurin(cplx s) {
  const double t = std::abs(s.imag());
  const int n_terms = static_cast<int>(std::ceil((t + 30.0) / (2.0 * kPi * 0.35)));
  constexpr int kCorrections = 16;
  cplx sum = 0.0;
  for (int n = 1; n < n_terms; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
  const double big_n = n_terms;
  const double log_n = std::log(big_n);
  const cplx n_pow = std::exp(-s * log_n);  // N^{-s}
  sum += big_n * n_pow / (s - 1.0) + 0.5 * n_pow;
  // Tail corrections B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
  cplx rising = s;
  cplx npow = n_pow / big_n;
  for (int k = 1; k <= kCorrections; ++k) {
    cplx term = kBernoulliOverFactorial[k - 1] * rising * npow;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    rising *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
    npow /= big_n * big_n;
  }
  return sum;
}

double riemann_siegel_theta(double t) {
  return log_gamma_complex(cplx(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(kPi);
}

double hardy_z_riemann_siegel(double t) {
  if (!(t > 0.0)) throw DomainError("hardy_z_riemann_siegel: requires t > 0");
  const double tau = t / (2.0 * kPi);
  const double root = std::sqrt(tau);
  const int m = static_cast<int>(std::floor(root));
  const double p = root - m;
  const double theta = riemann_siegel_theta(t);
  double main = 0.0;
  for (int n = 1; n <= m; ++n) {
    const double ln_n = std::log(static_cast<double>(n));
    main += std::cos(theta - t * ln_n) / std::sqrt(static_cast<double>(n));
  }
  main *= 2.0;
  const double c0 = rs_psi(p);
  const double c1 = -rs_psi_third_derivative(p) / (96.0 * kPi * kPi);
  const double sign = (m % 2 == 1) ? 1.0 : -1.0;  // (-1)^(m-1)
  return main + sign * std::pow(tau, -0.25) * (c0 + c1 / root);
}

XiBarValue xi_bar_detail(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("xi_bar: requires finite t >= 0");
  if (t == 0.0) return {0.0, 0.0};
  if (t > kXiBarMax && !g_warned_large_t.exchange(true))
    std::cerr << "warning: xi_bar accuracy degrades beyond t = " << kXiBarMax << "\n";
  const double front = std::pow(t, 0.25) / std::sqrt(2.0 * kPi);
  const cplx half_s(0.25, 0.5 * t);
  const cplx lg = log_gamma_complex(half_s);
  if (t <= kXiBarSwitch) {
    const cplx s(0.5, t);
    // 1/2 s (s-1) = -(1/4 + t^2)/2 cancels the 1/(1/4 + t^2) in the rescaling.
    const cplx pre = std::exp(0.25 * kPi * t + lg - half_s * std::log(kPi));
    const cplx val = -0.5 * front * pre * zeta_euler_maclaurin(s);
    const double mag = std::abs(val);
    return {val.real(), mag > 0.0 ? std::abs(val.imag()) / mag : 0.0};
  }
  const double z = hardy_z_riemann_siegel(t);
  const double mod = std::exp(0.25 * kPi * t + lg.real() - 0.25 * std::log(kPi));
  return {-0.5 * front * mod * z, 0.0};
}

double xi_bar(double t) { return xi_bar_detail(t).value; }

}  // namespace nleig::specfun
