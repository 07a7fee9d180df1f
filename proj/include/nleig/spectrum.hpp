#pragma once

// Nonlinear eigenvalues E_n: the initial values y(0) at which forward
// solutions switch from basin n-1 to basin n. Found by bisection on the basin
// class, or by integrating the n-th separatrix backward from large x.

#include <optional>
#include <string>
#include <vector>

#include "nleig/models.hpp"
#include "nleig/ode.hpp"

namespace nleig::spectrum {

enum class Method { bisection, backward };

const char* to_string(Method m);

struct ClassifyResult {
  int cls;        // basin index k: x y ends up in [s_k, s_{k+1})
  int maxima;     // maxima count of the full solution, cls + offset
  bool settled;   // false: basin estimated at the horizon
  double horizon;
};

struct EigenResult {
  int n = 0;
  double E = 0.0;
  double log10_E = 0.0;
  double z0 = 0.0;       // scaled initial value (E itself for raw problems)
  double lambda = 0.0;   // 0 for raw problems
  double lo = 0.0;       // bracket in E, lo < E <= hi
  double hi = 0.0;
  Method method = Method::bisection;
  std::string evidence;
  double residual = 0.0;  // (hi - lo) / E
  int maxima = 0;         // maxima count of the separatrix
  int class_lo = -1;
  int class_hi = -1;
  bool ok = true;
  std::string error;
};

/// Integrator settings used for shooting unless overridden.
ode::IntegratorConfig default_shooting_config(const models::GeneratingFunction& model);

/// Default relative tolerance: 1e-10 (cos, bessel, airy), 1e-8 (rgamma), 1e-6 (xibar).
double default_tolerance(const models::GeneratingFunction& model);

/// Basin class of the raw solution with y(0) = E.
ClassifyResult classify(const models::GeneratingFunction& model, double E, const ode::IntegratorConfig& cfg);
/// Basin class of the scaled solution with z(0) = z0.
ClassifyResult classify_scaled(const models::ScaledProblem& problem, double z0, const ode::IntegratorConfig& cfg);

/// Bisection on the class jump n-1 -> n. Throws BracketError, PrecisionExhausted.
EigenResult find_eigen(const models::GeneratingFunction& model, int n, double tol,
                       const ode::IntegratorConfig& cfg);
EigenResult find_eigen(const models::GeneratingFunction& model, int n, double tol);

/// Backward integration of the n-th separatrix from x0 (0: automatic,
/// x0^2 F'(s_n) = 1e6 and at least three turning-point lengths).
EigenResult refine_backward(const models::GeneratingFunction& model, int n, double x0,
                            const ode::IntegratorConfig& cfg);

/// The scaled (or raw, for xibar) separatrix curve from backward integration,
/// sampled on `grid` (ascending, within [0, start]).
ode::SolutionCurve separatrix_curve(const models::GeneratingFunction& model, int n,
                                    const std::vector<double>& grid, const ode::IntegratorConfig& cfg);

/// find_eigen for every n in [n_first, n_last]; failures are recorded per
/// index and the result is passed through check_monotone. workers = 0 uses
/// the hardware concurrency.
std::vector<EigenResult> spectrum_scan(const models::GeneratingFunction& model, int n_first, int n_last,
                                       double tol, const ode::IntegratorConfig& cfg, int workers = 0);
/// find_eigen for each listed index, results in the same order.
std::vector<EigenResult> spectrum_scan(const models::GeneratingFunction& model, const std::vector<int>& indices,
                                       double tol, const ode::IntegratorConfig& cfg, int workers = 0);

/// Marks E_n that fail E_{n-1} < E_n (consecutive indices, both ok) as failed.
void check_monotone(std::vector<EigenResult>& results);

}  // namespace nleig::spectrum
