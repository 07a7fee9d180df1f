#pragma once

// Dormand-Prince 5(4) integration of the scalar equations dz/dt = (X/Y) F(c t z)
// (raw coordinates are the case X = Y = 1), with maxima events and the
// basin-trapping test that decides where a forward solution ends up.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nleig/models.hpp"

namespace nleig::ode {

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double h_init = 0.0;  // 0: automatic
  double h_min = 1e-14;
  double h_max = 0.0;  // 0: unbounded
  double x_max = 3.0;  // horizon in the integration variable
  long max_steps = 50'000'000;

  /// Throws DomainError on out-of-range settings.
  void validate() const;
};

enum class Direction { forward, backward };
enum class Coords { raw, scaled, limit };

const char* to_string(Coords c);

struct Extremum {
  double at;
  double value;
  bool is_max;
};

struct SolutionCurve {
  Coords coords = Coords::scaled;
  std::string model;
  int n = 0;
  std::vector<double> grid;    // strictly increasing
  std::vector<double> values;  // >= 0
  std::vector<double> maxima;  // abscissae of local maxima
  std::vector<Extremum> extrema;
  /// Limit of x y when the solution is known to settle (trap test passed).
  std::optional<double> terminal_u;
  /// Basin index k (solution trapped in [s_k, s_{k+1})); estimated from the
  /// last point when not trapped.
  int basin = -1;
  bool trapped = false;
  double horizon = 0.0;  // last abscissa reached
  double last_u = 0.0;   // x y at the last point
  long steps = 0;
  std::string metadata;

  /// CSV with a `# model=..., n=..., coords=...` header, 17 significant digits.
  void write_csv(std::ostream& os) const;
};

struct IntegrateOptions {
  bool record = true;         // keep step points (or sample_at values)
  bool refine_events = true;  // bisect maxima abscissae on the dense output
  bool track_basin = true;    // forward only
  bool stop_when_trapped = false;
  int max_extensions = 6;     // horizon doublings while untrapped (forward)
  std::vector<double> sample_at;  // if nonempty, record dense output here
};

/// Integrates the scaled equation of `problem` from (t0, z0). Forward runs to
/// cfg.x_max (extended while untrapped when stop_when_trapped is set);
/// backward runs down to t = 0. Errors: StepUnderflow, PrecisionExhausted.
SolutionCurve integrate(const models::ScaledProblem& problem, double t0, double z0,
                        const IntegratorConfig& cfg, Direction dir, const IntegrateOptions& opts = {});

/// Raw coordinates: y' = F(x y) from (x0, y0).
SolutionCurve integrate(const models::GeneratingFunction& model, double x0, double y0,
                        const IntegratorConfig& cfg, Direction dir, const IntegrateOptions& opts = {});

/// Strict local maxima whose prominence exceeds 1e-12 max(values).
int count_maxima(const SolutionCurve& curve);

/// Stable zero of F that x y settles to, or nullopt ("not settled").
std::optional<double> attractor_limit(const SolutionCurve& curve, const models::GeneratingFunction& model);

}  // namespace nleig::ode
