#pragma once

// Special functions used by the generating functions and the asymptotic
// formulas. Everything is binary64; accuracy targets are listed next to each
// function and checked by the golden table in `nleig specfun-selftest`.

#include <complex>
#include <string>
#include <vector>

namespace nleig::specfun {

/// Accuracy target of a special-function implementation.
struct Accuracy {
  double rel_tol;    // relative error target
  double abs_floor;  // absolute error floor near zeros

  Accuracy(double rel, double abs_floor_);
};

inline const Accuracy kBesselAccuracy{1e-12, 1e-14};
inline const Accuracy kAiryAccuracy{1e-10, 1e-12};
inline const Accuracy kLogGammaAccuracy{1e-13, 1e-300};
inline const Accuracy kDigammaAccuracy{1e-11, 1e-12};
inline const Accuracy kXiBarAccuracy{1e-6, 1e-8};

/// Sign and natural log of |value|, for quantities that overflow binary64.
struct SignedLog {
  int sign;       // -1, 0 or +1
  double log_abs;  // ln|value|; -inf when sign == 0

  double value() const;  // throws OverflowError if out of range
};

// --- elementary helpers --------------------------------------------------

/// sin(pi x) with exact argument reduction; exactly 0 at integers.
double sin_pi(double x);
/// cos(pi x) with exact argument reduction; exactly 0 at half-integers.
double cos_pi(double x);

// --- Bessel --------------------------------------------------------------

/// J_nu(x) for 0 <= nu <= 50, x >= 0.
double bessel_j(double nu, double x);
/// dJ_nu/dx.
double bessel_j_prime(double nu, double x);

/// J_nu(x) and Y_nu(x) together, x > 0. Used by the Airy functions.
struct BesselJY {
  double j;
  double y;
};
BesselJY bessel_jy(double nu, double x);

// --- Airy ----------------------------------------------------------------

/// Ai(x) for -1e5 <= x <= 10.
double airy_ai(double x);
/// Ai'(x) for -1e5 <= x <= 10.
double airy_ai_prime(double x);

// --- Gamma family --------------------------------------------------------

/// ln Gamma(x), x > 0.
double log_gamma(double x);

/// Sign and ln|Gamma(x)| for any real x that is not a nonpositive integer.
SignedLog gamma_signed_log(double x);

/// 1/Gamma(-u) for u >= -1, through 1/Gamma(-u) = -(1/pi) sin(pi u) Gamma(1+u).
/// Exactly zero at nonnegative integers. Throws OverflowError when the
/// magnitude leaves binary64; use recip_gamma_log in that case.
double recip_gamma(double u);
SignedLog recip_gamma_log(double u);

/// psi(x); throws DomainError within 1e-12 of a nonpositive integer.
double digamma(double x);
/// psi'(x).
double trigamma(double x);

/// k-th root of psi on the negative axis, lying in (-k, -k+1).
double digamma_root(int k);
/// The closed-form seed -k + atan(pi / ln(k + 1/8)) / pi.
double digamma_root_seed(double k);

// --- Lambert W -----------------------------------------------------------

enum class LambertBranch { principal, minus_one };

double lambert_w(LambertBranch branch, double x);

// --- Riemann zeta / xi ---------------------------------------------------

/// ln Gamma(z) for complex z with Re z > 0 (continuous branch).
std::complex<double> log_gamma_complex(std::complex<double> z);

/// zeta(s) by Euler-Maclaurin summation.
std::complex<double> zeta_euler_maclaurin(std::complex<double> s);

/// Riemann-Siegel theta(t).
double riemann_siegel_theta(double t);
/// Hardy Z(t) by the Riemann-Siegel main sum plus the C0 and C1 corrections.
double hardy_z_riemann_siegel(double t);

/// Result of assembling the rescaled xi-function on the critical line.
struct XiBarValue {
  double value;
  double imag_residue;  // |Im| / |value| of the assembled complex product
};

/// Rescaled xi-function (2 pi)^(-1/2) t^(1/4) / (1/4 + t^2) e^(pi t / 4) xi(1/2 + i t)
/// for t >= 0. Euler-Maclaurin below kXiBarSwitch, Riemann-Siegel above.
XiBarValue xi_bar_detail(double t);
double xi_bar(double t);
inline constexpr double kXiBarSwitch = 100.0;
inline constexpr double kXiBarMax = 1000.0;

// --- self test -----------------------------------------------------------

struct SelfTestLine {
  std::string name;
  double expected;
  double got;
  double tolerance;
  bool pass;
};

/// Golden-table check of every function above.
std::vector<SelfTestLine> run_selftest();

}  // namespace nleig::specfun
