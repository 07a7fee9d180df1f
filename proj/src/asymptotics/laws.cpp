#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nleig/asymptotics.hpp"
#include "nleig/error.hpp"

namespace nleig::asymptotics {

namespace {
constexpr double kPi = std::numbers::pi;
const double kLogMax = std::log(std::numeric_limits<double>::max());
}  // namespace

GrowthLaw growth_law(const models::GeneratingFunction& model) {
  if (!model.algebraic()) throw DomainError("growth_law: model " + model.spec() + " is not algebraic");
  const models::AsymptoticForm& f = model.asym();
  if (!(f.alpha > -1.0) || !(f.beta > 0.0)) throw DomainError("growth_law requires alpha > -1 and beta > 0");
  const double g = (1.0 + f.alpha) / (2.0 * f.beta);
  return {g, std::sqrt(f.a) * std::pow(2.0 * kPi / f.b, g) * limit_curve_origin(f.alpha)};
}

double forbidden_region_z(const models::ScaledProblem& problem, double t) {
  if (!(t > 1.0)) throw DomainError("forbidden_region_z requires t > 1");
  const double beta = problem.model().asym().beta;
  return (1.0 - std::asin(1.0 / (t * t)) / (beta * problem.lambda())) / t;
}

double envelope(const models::ScaledProblem& problem, double t) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("envelope requires 0 < t < 1");
  const models::AsymptoticForm& f = problem.model().asym();
  const double zinf = limit_curve_value(f.alpha, t);
  return std::pow(t, 1.0 + f.alpha - f.beta) * std::pow(zinf, f.alpha - f.beta) / (f.beta * problem.lambda());
}

RGammaScaling rgamma_scaling(int n) {
  const models::ScaledProblem p(models::GeneratingFunction::recip_gamma(), n);
  return {n, p.lambda(), p.r_lambda(), p.log_xi()};
}

double rgamma_asymptote_log(int n) {
  const RGammaScaling s = rgamma_scaling(n);
  // radicand -lambda / Gamma(r_lambda) = lambda * xi(lambda) > 0
  return 0.5 * (std::log(s.lambda) + s.log_xi);
}

double rgamma_asymptote(int n) {
  const double l = rgamma_asymptote_log(n);
  if (l > kLogMax) throw OverflowError("rgamma_asymptote: E_" + std::to_string(n) + " exceeds binary64");
  return std::exp(l);
}

double rgamma_forbidden_epsilon(double t) {
  if (!(t >= 1.0)) throw DomainError("rgamma_forbidden_epsilon requires t >= 1");
  return -specfun::lambert_w(specfun::LambertBranch::principal, -std::exp(-1.0) / (t * t));
}

double rgamma_limit_curve(double t) {
  if (!(t >= 0.0)) throw DomainError("rgamma_limit_curve requires t >= 0");
  return t <= 1.0 ? 1.0 : 1.0 / t;
}

}  // namespace nleig::asymptotics
