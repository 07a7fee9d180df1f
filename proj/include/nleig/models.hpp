#pragma once

// Generating functions F of y'(x) = F(x y), their zeros, and the change of
// variables y = Y z, x = X t that puts the turning point of the n-th
// separatrix at t = 1.

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nleig/specfun.hpp"

namespace nleig::models {

/// Large-u form F(u) ~ a u^alpha cos(b u^beta + phi).
struct AsymptoticForm {
  double a;
  double alpha;
  double b;
  double beta;
  double phi;
};

enum class ModelId { cosine, bessel, airy, recip_gamma, xi_bar };

enum class ZeroKind { stable, unstable };

struct ClassifiedZero {
  double u;
  ZeroKind kind;
  int index;  // 1-based ordinal within its kind
};

/// Zeros of F in increasing order up to some bound. unstable[0] is the
/// bottom of the domain (s_0), unstable[k] = s_k for k >= 1. stable[k] is the
/// stable zero in [s_k, s_{k+1}) and lobe_min[k] the minimiser of F on
/// (stable[k], s_{k+1}).
struct ZeroTable {
  std::vector<double> unstable;
  std::vector<double> stable;
  std::vector<double> lobe_min;
  std::vector<double> lobe_min_log;  // ln|F(lobe_min[k])|
};

class ZeroCache;

class GeneratingFunction {
 public:
  static GeneratingFunction cosine();
  static GeneratingFunction bessel(double nu);
  static GeneratingFunction airy();
  static GeneratingFunction recip_gamma();
  static GeneratingFunction xi_bar();

  /// Parses `cos`, `bessel:NU`, `airy`, `rgamma`, `xibar`. Throws ConfigError.
  static GeneratingFunction parse(const std::string& spec);

  ModelId id() const { return id_; }
  double nu() const { return nu_; }
  /// Canonical model string, accepted by parse().
  std::string spec() const;

  bool algebraic() const { return asym_.has_value(); }
  /// Throws DomainError for recip_gamma and xi_bar.
  const AsymptoticForm& asym() const;

  /// Lower end of the domain in u.
  double domain_min() const { return id_ == ModelId::recip_gamma ? -1.0 : 0.0; }

  double eval(double u) const;
  /// Sign and ln|F(u)|; never overflows.
  specfun::SignedLog eval_log(double u) const;
  double derivative(double u) const;
  /// ln|F'(s)| at a zero s (recip_gamma derivatives overflow quickly).
  double log_derivative_at_zero(double s) const;

  /// Number of stable zeros in (0, s_1); the maxima count of a solution
  /// trapped in basin k is k + maxima_offset().
  int maxima_offset() const { return id_ == ModelId::recip_gamma ? 0 : 1; }

  /// Zeros covering at least [domain_min, u_max] plus one more unstable zero.
  ZeroTable zeros_upto(double u_max) const;
  /// Zeros with at least `count` unstable zeros s_1..s_count (and s_{count+1}).
  ZeroTable zeros_count(int count) const;

  double unstable_zero(int k) const;  // s_k, k >= 1
  double stable_zero(int k) const;    // zero in [s_k, s_{k+1}), k >= 0

 private:
  GeneratingFunction(ModelId id, double nu, std::optional<AsymptoticForm> asym,
                     bool with_zero_cache = true);
  friend class ZeroCache;

  ModelId id_;
  double nu_ = 0.0;
  std::optional<AsymptoticForm> asym_;
  std::shared_ptr<ZeroCache> zeros_;
};

double eval_F(const GeneratingFunction& model, double u);

/// First `count` unstable zeros s_1..s_count.
std::vector<ClassifiedZero> unstable_zeros(const GeneratingFunction& model, int count);

/// Scaling lambda for index n: (2n - 1/2) pi - phi, or 2n - 1 for recip_gamma.
double lambda_for_index(const GeneratingFunction& model, int n);

/// The change of variables y = Y z, x = X t. The scaled equation is
/// dz/dt = (X/Y) F(c t z) with c = X Y. Scale factors are kept as logs so that
/// recip_gamma indices past the binary64 range of xi(lambda) still work.
class ScaledProblem {
 public:
  /// Algebraic models and recip_gamma at index n.
  ScaledProblem(GeneratingFunction model, int n);
  /// Algebraic models at an arbitrary lambda > 0.
  static ScaledProblem with_lambda(GeneratingFunction model, double lambda);
  /// X = Y = 1: the raw equation written in scaled form (any model).
  static ScaledProblem identity(GeneratingFunction model);

  const GeneratingFunction& model() const { return model_; }
  int n() const { return n_; }
  double lambda() const { return lambda_; }
  double gamma_exp() const { return gamma_exp_; }
  bool is_identity() const { return identity_; }

  double log_x_scale() const { return log_x_; }  // ln X
  double log_y_scale() const { return log_y_; }  // ln Y
  double c() const { return c_; }                 // X Y
  /// ln(Y/X) for the log-space right-hand side.
  double log_ratio_inv() const { return log_y_ - log_x_; }

  /// recip_gamma only: digamma root r_lambda and ln xi(lambda).
  double r_lambda() const { return r_lambda_; }
  double log_xi() const { return log_xi_; }

  std::pair<double, double> to_scaled(double x, double y) const;
  std::pair<double, double> from_scaled(double t, double z) const;
  /// ln y for a scaled z, for E values outside binary64.
  double log_y(double z) const { return std::log(z) + log_y_; }

  /// dz/dt at (t, z). Throws PrecisionExhausted if the value overflows.
  double rhs(double t, double z) const;
  /// (X/Y) F evaluated at a given u; same overflow behaviour as rhs.
  double rhs_at_u(double u) const;

 private:
  ScaledProblem(GeneratingFunction model, int n, double lambda);
  void init_algebraic();

  GeneratingFunction model_;
  int n_ = 0;
  double lambda_ = 1.0;
  double gamma_exp_ = 0.0;
  bool identity_ = false;
  double log_x_ = 0.0;
  double log_y_ = 0.0;
  double c_ = 1.0;
  double ratio_ = 1.0;  // X/Y when representable
  double r_lambda_ = 0.0;
  double log_xi_ = 0.0;
};

double scaled_rhs(const ScaledProblem& problem, double t, double z);

}  // namespace nleig::models
