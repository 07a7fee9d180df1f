#pragma once

// Large-index objects: the limit curve z_inf(t) of scaled eigensolutions,
// growth laws E_n ~ A n^gamma, the oscillation envelope, the absorbing-walk
// coefficients of the moment expansion, and the reciprocal-gamma asymptote.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nleig/models.hpp"

namespace nleig::asymptotics {

struct LimitCurve {
  double alpha = 0.0;
  std::vector<double> grid;
  std::vector<double> z;
  std::optional<double> origin_value;  // z_inf(0) for alpha > -1

  /// Same CSV schema as a solution curve, with coords=limit.
  void write_csv(std::ostream& os, const std::string& model = "limit") const;
};

/// z_inf(0) = (2^(1+alpha) / (1+alpha)^2)^(1/((1-alpha)(3-alpha))), with the
/// limiting values at alpha = 1 and alpha = 3. Requires alpha > -1.
double limit_curve_origin(double alpha);

/// Residual (log form) of the implicit limit-curve equation at (t, z), t <= 1.
double limit_curve_residual(double alpha, double t, double z);

/// z_inf(t) for alpha > -1, t >= 0 (1/t beyond the turning point).
/// Throws BracketError if the root cannot be bracketed.
double limit_curve_value(double alpha, double t);

LimitCurve limit_curve(double alpha, const std::vector<double>& grid);

enum class OriginKind { finite, power_law, log_quartic };

struct OriginBehavior {
  OriginKind kind;
  double value;      // z_inf(0) (finite case)
  double exponent;   // z ~ amplitude * t^exponent (power-law case)
  double amplitude;
  std::string descriptor;
};

OriginBehavior origin_behavior(double alpha);

struct GrowthLaw {
  double gamma_exp;
  double A;
};

/// E_n ~ A n^gamma with gamma = (1+alpha)/(2 beta),
/// A = sqrt(a) (2 pi / b)^gamma z_inf(0). Rejects non-algebraic models.
GrowthLaw growth_law(const models::GeneratingFunction& model);

/// z = (1/t)(1 - arcsin(1/t^2)/(beta lambda)) in the forbidden region t > 1.
double forbidden_region_z(const models::ScaledProblem& problem, double t);

/// Predicted half-width of the oscillation of z about z_inf:
/// (1/(beta lambda)) t^(1+alpha-beta) z_inf(t)^(alpha-beta), 0 < t < 1.
double envelope(const models::ScaledProblem& problem, double t);

using Rational = boost::multiprecision::cpp_rational;

struct WalkCoefficients {
  int p_max = 0;
  std::vector<Rational> values;  // alpha_{1,2p+1}, p = 0..p_max
};

/// Closed form -C_p / 2^(2p+1). p_max <= 60.
WalkCoefficients walk_coefficients(int p_max);
/// Oracle: weights of +-1 walks from 2 absorbed at 1, each step weighted -1/2.
WalkCoefficients walk_coefficients_dp(int p_max);
/// sum_p alpha_{1,2p+1} x^(2p+1) in double precision.
double walk_partial_sum(const WalkCoefficients& w, double x);

struct RGammaScaling {
  int n;
  double lambda;    // 2n - 1
  double r_lambda;  // digamma root in (-lambda, -lambda + 1)
  double log_xi;    // ln xi(lambda), xi = -1/Gamma(r_lambda)
};

RGammaScaling rgamma_scaling(int n);

/// ln of the E_n prediction sqrt(-lambda / Gamma(r_lambda)).
double rgamma_asymptote_log(int n);
/// Linear-scale prediction; throws OverflowError outside binary64.
double rgamma_asymptote(int n);
/// epsilon(t) = -W_0(-1/(e t^2)), t >= 1.
double rgamma_forbidden_epsilon(double t);
/// 1 for t <= 1, 1/t beyond.
double rgamma_limit_curve(double t);

}  // namespace nleig::asymptotics
