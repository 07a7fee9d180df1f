#include <cmath>
#include <limits>
#include <string>

#include "nleig/error.hpp"
#include "nleig/models.hpp"

namespace nleig::models {

namespace {

const double kLogMax = std::log(std::numeric_limits<double>::max());

double scale_by_log(double v, double log_factor) {
  if (v == 0.0) return 0.0;
  const double l = std::log(std::abs(v)) + log_factor;
  if (l > kLogMax) throw OverflowError("scaled value exceeds binary64 range");
  return std::copysign(std::exp(l), v);
}

}  // namespace

ScaledProblem::ScaledProblem(GeneratingFunction model, int n, double lambda)
    : model_(std::move(model)), n_(n), lambda_(lambda) {}

ScaledProblem::ScaledProblem(GeneratingFunction model, int n)
    : model_(std::move(model)), n_(n), lambda_(lambda_for_index(model_, n)) {
  if (model_.id() == ModelId::xi_bar)
    throw DomainError("xibar has no scaling; use ScaledProblem::identity");
  if (model_.id() == ModelId::recip_gamma) {
    const int k = 2 * n - 1;
    if (k > 500) throw DomainError("recip_gamma scaling supports n <= 250");
    r_lambda_ = specfun::digamma_root(k);
    const specfun::SignedLog g = specfun::gamma_signed_log(r_lambda_);
    // xi(lambda) = -xi_0 / Gamma(r_lambda) with xi_0 = 1 must be positive.
    if (g.sign >= 0)
      throw ConvergenceError("recip_gamma scaling: Gamma(r_lambda) is not negative at lambda = " +
                             std::to_string(lambda_));
    log_xi_ = -g.log_abs;
    const double ll = std::log(lambda_);
    log_x_ = 0.5 * (ll - log_xi_);
    log_y_ = 0.5 * (ll + log_xi_);
    c_ = lambda_;
    ratio_ = std::exp(-log_xi_);
    gamma_exp_ = 0.0;
    return;
  }
  init_algebraic();
}

ScaledProblem ScaledProblem::with_lambda(GeneratingFunction model, double lambda) {
  if (!model.algebraic()) throw DomainError("with_lambda requires an algebraic model");
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  ScaledProblem p(std::move(model), 0, lambda);
  p.init_algebraic();
  return p;
}

ScaledProblem ScaledProblem::identity(GeneratingFunction model) {
  ScaledProblem p(std::move(model), 0, 1.0);
  p.identity_ = true;
  return p;
}

void ScaledProblem::init_algebraic() {
  const AsymptoticForm& f = model_.asym();
  if (!(f.beta > 0.0)) throw DomainError("spectrum scaling requires beta > 0");
  if (!(lambda_ > 0.0)) throw DomainError("lambda must be positive");
  gamma_exp_ = (1.0 + f.alpha) / (2.0 * f.beta);
  const double l = std::log(lambda_ / f.b);
  log_y_ = 0.5 * std::log(f.a) + gamma_exp_ * l;
  log_x_ = -0.5 * std::log(f.a) + (1.0 / f.beta - gamma_exp_) * l;
  c_ = std::exp(l / f.beta);
  ratio_ = std::exp(log_x_ - log_y_);
}

std::pair<double, double> ScaledProblem::to_scaled(double x, double y) const {
  return {scale_by_log(x, -log_x_), scale_by_log(y, -log_y_)};
}

std::pair<double, double> ScaledProblem::from_scaled(double t, double z) const {
  return {scale_by_log(t, log_x_), scale_by_log(z, log_y_)};
}

double ScaledProblem::rhs_at_u(double u) const {
  if (model_.id() != ModelId::recip_gamma) return ratio_ * model_.eval(u);
  const specfun::SignedLog f = model_.eval_log(u);
  if (f.sign == 0) return 0.0;
  const double l = f.log_abs - log_xi_;
  if (l > kLogMax)
    throw PrecisionExhausted("recip_gamma right-hand side overflows at u = " + std::to_string(u));
  return f.sign * std::exp(l);
}

double ScaledProblem::rhs(double t, double z) const { return rhs_at_u(c_ * t * z); }

double scaled_rhs(const ScaledProblem& problem, double t, double z) {
  if (t < 0.0 || z < 0.0) throw DomainError("scaled_rhs requires t >= 0 and z >= 0");
  return problem.rhs(t, z);
}

}  // namespace nleig::models
