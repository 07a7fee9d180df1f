#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "nleig/asymptotics.hpp"
#include "nleig/error.hpp"

using namespace nleig;
using namespace nleig::asymptotics;
using models::GeneratingFunction;
using models::ScaledProblem;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
  return g;
}

// Root of e e^{-e} = 1/(e t^2) in (0, 1) by plain bisection.
double epsilon_bisect(double t) {
  const double target = std::exp(-1.0) / (t * t);
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid * std::exp(-mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE("asymptotics") {

TEST_CASE("limit curve values at the turning point and origin") {
  for (double a : {-0.9, -0.5, -0.25, 0.0, 0.5, 1.0, 2.0, 3.0, 5.0}) {
    CAPTURE(a);
    CHECK(std::abs(limit_curve_value(a, 1.0) - 1.0) <= 1e-12);
    for (double t : {1.5, 2.0, 10.0}) CHECK(std::abs(limit_curve_value(a, t) - 1.0 / t) <= 1e-12);
  }
  CHECK(std::abs(limit_curve_value(-0.5, 0.0) - std::pow(2.0, 10.0 / 21.0)) <= 1e-12);
  CHECK(std::abs(limit_curve_value(-0.5, 0.0) - 1.3910656192458295) <= 1e-12);
  CHECK(std::abs(limit_curve_value(0.0, 0.0) - std::cbrt(2.0)) <= 1e-12);
  CHECK(limit_curve_origin(1.0) == doctest::Approx(limit_curve_origin(1.0 + 1e-6)).epsilon(1e-5));
  CHECK(limit_curve_origin(3.0) == doctest::Approx(limit_curve_origin(3.0 - 1e-6)).epsilon(1e-5));
  CHECK_THROWS_AS(limit_curve_value(-1.0, 0.5), DomainError);
}

TEST_CASE("limit curve residual is small on a grid") {
  for (double a : {-0.9, -0.5, 0.0, 1.0, 5.0}) {
    for (double t : linspace(0.0, 1.0, 101)) {
      CAPTURE(a);
      CAPTURE(t);
      CHECK(std::abs(limit_curve_residual(a, t, limit_curve_value(a, t))) <= 1e-12);
    }
  }
}

TEST_CASE("bessel identity at alpha = -1/2") {
  for (double t : linspace(0.005, 1.0, 200)) {
    const double z = limit_curve_value(-0.5, t);
    const double r3 = std::sqrt(z * z * z), q = std::sqrt(std::max(0.0, z * z * z - t));
    CAPTURE(t);
    CHECK(std::abs(std::pow(4 * r3 - 3 * q, 4) * std::pow(r3 + q, 3) / 256.0 - 1.0) <= 1e-10);
  }
}

TEST_CASE("limit curve is decreasing on (0, 1]") {
  const auto grid = linspace(0.0, 1.0, 1001);
  for (double a : {-0.9, -0.5, -0.25, 0.0, 1.0, 5.0}) {
    const LimitCurve c = limit_curve(a, grid);
    CAPTURE(a);
    for (std::size_t i = 1; i < grid.size(); ++i) {
      CHECK(c.z[i] <= c.z[i - 1] * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()));
      if (grid[i] >= 0.3) CHECK(c.z[i] < c.z[i - 1]);
    }
  }
}

TEST_CASE("limit curve tends to one for large alpha") {
  double dev = 0.0;
  for (double t : linspace(0.0, 1.0, 201)) dev = std::max(dev, std::abs(limit_curve_value(50.0, t) - 1.0));
  CHECK(dev < 0.05);
}

TEST_CASE("limit curve CSV") {
  const LimitCurve c = limit_curve(0.0, {0.0, 1.0, 2.0});
  REQUIRE(c.origin_value.has_value());
  std::ostringstream os;
  c.write_csv(os);
  CHECK(os.str().rfind("# model=limit, n=0, coords=limit, alpha=0\nt,z\n", 0) == 0);
  CHECK(os.str().find("\n1,1\n2,0.5\n") != std::string::npos);
}

TEST_CASE("origin behavior") {
  const auto f = origin_behavior(0.0);
  CHECK(f.kind == OriginKind::finite);
  CHECK(f.value == doctest::Approx(std::cbrt(2.0)).epsilon(1e-14));
  const auto l = origin_behavior(-1.0);
  CHECK(l.kind == OriginKind::log_quartic);
  CHECK(l.descriptor.find("(-2 ln t)^(1/4)") != std::string::npos);
  const auto p = origin_behavior(-2.0);
  CHECK(p.kind == OriginKind::power_law);
  CHECK(p.exponent == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  CHECK(p.amplitude == doctest::Approx(std::cbrt(3.0 / std::sqrt(5.0))).epsilon(1e-14));
}

TEST_CASE("growth laws") {
  const auto c = growth_law(GeneratingFunction::cosine());
  CHECK(c.gamma_exp == 0.5);
  CHECK(c.A == doctest::Approx(std::pow(2.0, 5.0 / 6.0)).epsilon(1e-14));
  CHECK(c.A == doctest::Approx(1.781797).epsilon(1e-6));
  for (double nu : {0.0, 1.0, 2.5, 20.0}) {
    const auto b = growth_law(GeneratingFunction::bessel(nu));
    CHECK(b.gamma_exp == 0.25);
    CHECK(b.A == doctest::Approx(std::pow(2.0, 41.0 / 42.0)).epsilon(1e-14));
  }
  CHECK(std::abs(growth_law(GeneratingFunction::bessel(0.0)).A - 1.967260) <= 5e-6);
  const auto a = growth_law(GeneratingFunction::airy());
  CHECK(a.gamma_exp == doctest::Approx(0.25));
  CHECK(a.A == doctest::Approx(1.72330990).epsilon(1e-8));
  CHECK_THROWS_AS(growth_law(GeneratingFunction::recip_gamma()), DomainError);
  CHECK_THROWS_AS(growth_law(GeneratingFunction::xi_bar()), DomainError);
}

TEST_CASE("forbidden-region solution") {
  const ScaledProblem p(GeneratingFunction::cosine(), 1);
  CHECK(std::abs(forbidden_region_z(p, 2.0) - 0.47318979) <= 1e-8);
  CHECK(std::abs(forbidden_region_z(p, 2.0) - 0.473192) <= 1e-5);
  CHECK(std::abs(forbidden_region_z(p, 1e4) * 1e4 - 1.0) <= 1e-8);
  const ScaledProblem big = ScaledProblem::with_lambda(GeneratingFunction::cosine(), 1e6);
  CHECK(std::abs(forbidden_region_z(big, 2.0) - 0.5) <= 1e-6);
  CHECK_THROWS_AS(forbidden_region_z(p, 1.0), DomainError);
}

TEST_CASE("walk coefficients") {
  const auto w = walk_coefficients(60);
  const auto d = walk_coefficients_dp(60);
  REQUIRE(w.values.size() == 61);
  CHECK(w.values[0] == Rational(-1, 2));
  CHECK(w.values[1] == Rational(-1, 8));
  CHECK(w.values[3] == Rational(-5, 128));
  for (int p = 0; p <= 60; ++p) {
    CAPTURE(p);
    CHECK(w.values[p] == d.values[p]);
    CHECK(w.values[p] < 0);
    if (p > 0) CHECK(abs(w.values[p]) < abs(w.values[p - 1]));
  }
  for (double x : {0.1, 0.5}) CHECK(std::abs(walk_partial_sum(w, x) - (std::sqrt(1 - x * x) - 1) / x) <= 1e-10);
  CHECK(std::abs(walk_partial_sum(w, 0.9) - (std::sqrt(1 - 0.81) - 1) / 0.9) <= 1e-7);
  CHECK_THROWS_AS(walk_coefficients(61), DomainError);
}

TEST_CASE("oscillation envelope") {
  const auto f = GeneratingFunction::bessel(0.0);
  const auto p = ScaledProblem::with_lambda(f, 100.0);
  const auto q = ScaledProblem::with_lambda(f, 200.0);
  for (double t : {0.05, 0.3, 0.5, 0.9}) {
    CAPTURE(t);
    CHECK(envelope(q, t) == doctest::Approx(envelope(p, t) / 2).epsilon(1e-14));
    const double z = limit_curve_value(-0.5, t);
    CHECK(envelope(p, t) * 100.0 * std::sqrt(t) * std::pow(z, 1.5) == doctest::Approx(1.0).epsilon(1e-13));
  }
  for (double lam : {1e2, 1e4, 1e6}) {
    const auto r = ScaledProblem::with_lambda(f, lam);
    const double scaled = envelope(r, 1.0 / lam) * std::sqrt(lam);
    CHECK(scaled == doctest::Approx(std::pow(limit_curve_value(-0.5, 0.0), -1.5)).epsilon(1e-2));
  }
  CHECK_THROWS_AS(envelope(p, 1.0), DomainError);
}

TEST_CASE("reciprocal-gamma asymptote") {
  CHECK(rgamma_asymptote(10) == doctest::Approx(4.98e8).epsilon(1e-3));
  CHECK(rgamma_asymptote(20) == doctest::Approx(2.68e23).epsilon(2e-3));
  CHECK(std::isfinite(rgamma_asymptote(80)));
  CHECK_THROWS_AS(rgamma_asymptote(200), OverflowError);
  CHECK(std::isfinite(rgamma_asymptote_log(200)));
  CHECK(rgamma_asymptote_log(20) == doctest::Approx(std::log(rgamma_asymptote(20))).epsilon(1e-14));
}

TEST_CASE("reciprocal-gamma scaling invariants") {
  for (int n = 1; n <= 120; ++n) {
    const RGammaScaling s = rgamma_scaling(n);
    CAPTURE(n);
    CHECK(s.lambda == 2.0 * n - 1.0);
    CHECK(s.r_lambda > -s.lambda);
    CHECK(s.r_lambda < -s.lambda + 1.0);
    CHECK(std::isfinite(s.log_xi));
    CHECK(std::abs(specfun::digamma(s.r_lambda)) <= 1e-9);
  }
}

TEST_CASE("forbidden-region epsilon and limit curve") {
  CHECK(rgamma_forbidden_epsilon(1.0) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(std::abs(rgamma_forbidden_epsilon(2.0) - 0.10182843109414195886) <= 1e-13);
  CHECK(std::abs(rgamma_forbidden_epsilon(2.0) - 0.101830) <= 1e-5);
  for (double t : {1.1, 1.5, 3.0, 10.0, 100.0}) {
    CAPTURE(t);
    CHECK(std::abs(rgamma_forbidden_epsilon(t) - epsilon_bisect(t)) <= 1e-12);
  }
  CHECK(rgamma_limit_curve(0.5) == 1.0);
  CHECK(rgamma_limit_curve(1.0) == 1.0);
  CHECK(rgamma_limit_curve(4.0) == 0.25);
  CHECK_THROWS_AS(rgamma_forbidden_epsilon(0.5), DomainError);
}

}
