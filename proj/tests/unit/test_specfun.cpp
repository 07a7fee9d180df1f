#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "nleig/error.hpp"
#include "nleig/specfun.hpp"

using namespace nleig;
using namespace nleig::specfun;

namespace {
double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }
}  // namespace

TEST_SUITE("specfun") {

TEST_CASE("bessel_j at the origin and at the first zero") {
  CHECK(bessel_j(0.0, 0.0) == 1.0);
  CHECK(bessel_j(1.0, 0.0) == 0.0);
  CHECK(std::abs(bessel_j(0.0, 2.404825557695773)) <= 1e-12);
}

TEST_CASE("bessel_j against 40-digit reference values") {
  struct Row { double nu, x, want; };
  const Row rows[] = {{0, 5, -0.17759677131433830435},  {1, 10.5, -0.078850014227331488153},
                      {2.5, 30, 0.14120285879928212036}, {0, 1000, 0.024786686152420174561},
                      {7, 3.2, 0.0038446141946159729318}, {0, 0.5, 0.93846980724081290423},
                      {20, 25, 0.05199404922830323178}};
  for (const auto& r : rows) {
    CAPTURE(r.nu);
    CAPTURE(r.x);
    CHECK(rel(bessel_j(r.nu, r.x), r.want) <= 1e-12);
  }
}

TEST_CASE("bessel_j follows its large-argument cosine form") {
  const double x = 100.0;
  const double asym = std::sqrt(2.0 / (std::numbers::pi * x)) * std::cos(x - std::numbers::pi / 4);
  CHECK(std::abs(bessel_j(0.0, x) - asym) <= 2e-3);
}

TEST_CASE("J0' = -J1 by central differences at 100 random points") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(0.1, 50.0);
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng), h = 1e-5;
    const double fd = (bessel_j(0.0, x + h) - bessel_j(0.0, x - h)) / (2 * h);
    CAPTURE(x);
    CHECK(std::abs(fd + bessel_j(1.0, x)) <= 1e-9);
    CHECK(std::abs(bessel_j_prime(0.0, x) + bessel_j(1.0, x)) <= 1e-12);
  }
}

TEST_CASE("bessel_j rejects negative arguments and orders beyond 50") {
  CHECK_THROWS_AS(bessel_j(0.0, -1.0), DomainError);
  CHECK_THROWS_AS(bessel_j(51.0, 1.0), DomainError);
}

TEST_CASE("airy_ai values, zero and oscillatory form") {
  CHECK(rel(airy_ai(0.0), 0.3550280538878172) <= 1e-14);
  CHECK(std::abs(airy_ai(-2.338107410459767)) <= 1e-10);
  const double x = -100.0, u = -x;
  const double asym = std::cos(2.0 / 3.0 * std::pow(u, 1.5) - std::numbers::pi / 4) /
                      (std::sqrt(std::numbers::pi) * std::pow(u, 0.25));
  CHECK(std::abs(airy_ai(x) - asym) <= 1e-4);
  struct Row { double x, want; };
  const Row rows[] = {{1.5, 0.071749497008105409674}, {-7.3, 0.33577037051514727697},
                      {5, 0.00010834442813607441735}, {-0.5, 0.4757280916105395888},
                      {-35.2, 0.22649973305577264753}};
  for (const auto& r : rows) {
    CAPTURE(r.x);
    CHECK(rel(airy_ai(r.x), r.want) <= 1e-10);
  }
  CHECK(rel(airy_ai_prime(0.0), -0.25881940379280679841) <= 1e-12);
  CHECK_THROWS_AS(airy_ai(11.0), DomainError);
}

TEST_CASE("log_gamma") {
  CHECK(std::abs(log_gamma(1.0)) <= 1e-15);
  CHECK(std::abs(log_gamma(2.0)) <= 1e-15);
  CHECK(rel(log_gamma(11.0), 15.104412573075516) <= 1e-13);
  CHECK(rel(log_gamma(0.1), 2.252712651734205902) <= 1e-13);
  CHECK(rel(log_gamma(100.5), 361.43554046777762156) <= 1e-13);
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
}

TEST_CASE("recip_gamma examples and exact zeros") {
  CHECK(recip_gamma(0.0) == 0.0);
  CHECK(recip_gamma(3.0) == 0.0);
  CHECK(rel(recip_gamma(-0.5), 0.5641895835477563) <= 1e-12);
  CHECK(rel(recip_gamma(0.5), -0.2820947917738781) <= 1e-12);
  CHECK(rel(recip_gamma(2.5), -1.057855469152043038) <= 1e-12);
  CHECK(rel(recip_gamma(-0.75), 0.81604893909826298108) <= 1e-12);
  CHECK(rel(recip_gamma(7.3), 2390.1266372689977879) <= 1e-12);
  CHECK_THROWS_AS(recip_gamma(200.5), OverflowError);
  const SignedLog big = recip_gamma_log(200.5);
  CHECK(big.sign != 0);
  CHECK(std::isfinite(big.log_abs));
}

TEST_CASE("reflection consistency of recip_gamma with an independent gamma path") {
  for (double u = -0.9; u <= 20.0; u += 0.0731) {
    if (std::abs(u - std::round(u)) < 1e-3) continue;
    const double g = std::tgamma(-u);
    CAPTURE(u);
    CHECK(std::abs(recip_gamma(u) * g - 1.0) <= 1e-10);
  }
}

TEST_CASE("digamma") {
  CHECK(rel(digamma(1.0), -0.5772156649015329) <= 1e-11);
  CHECK(rel(digamma(2.0), 1.0 - 0.5772156649015329) <= 1e-11);
  CHECK(rel(digamma(0.5), -1.9635100260214235) <= 1e-11);
  CHECK(rel(digamma(0.25), -4.2274535333762654081) <= 1e-11);
  CHECK(rel(digamma(3.5), 1.1031566406452431872) <= 1e-11);
  CHECK(rel(digamma(-1.5), 0.70315664064524318723) <= 1e-11);
  CHECK(rel(digamma(-7.25), 5.1899772149562878875) <= 1e-11);
  CHECK_THROWS_AS(digamma(-3.0), DomainError);
}

TEST_CASE("digamma roots: values, seed, interlacing") {
  CHECK(std::abs(digamma_root(1) - -0.5040830082644554) <= 1e-13);
  for (int k : {1, 2, 10, 100}) {
    const double seed = digamma_root_seed(k);
    CHECK(seed > -k);
    CHECK(seed < -k + 1);
    CHECK(std::abs(seed - digamma_root(k)) < 0.05);
  }
  CHECK(std::abs(digamma_root(10) - -9.7026725400018637361) <= 1e-12);
  for (int k = 1; k <= 500; ++k) {
    const double r = digamma_root(k);
    CAPTURE(k);
    REQUIRE(r > -k);
    REQUIRE(r < -k + 1);
    REQUIRE(std::abs(digamma(r)) <= 1e-10);
  }
}

TEST_CASE("lambert_w examples and branch point") {
  CHECK(lambert_w(LambertBranch::principal, 0.0) == 0.0);
  CHECK(lambert_w(LambertBranch::principal, -std::exp(-1.0)) == doctest::Approx(-1.0).epsilon(1e-7));
  CHECK(rel(lambert_w(LambertBranch::principal, 1.0), 0.5671432904097838) <= 1e-14);
  CHECK(rel(lambert_w(LambertBranch::principal, 10.0), 1.7455280027406993831) <= 1e-14);
  CHECK(rel(lambert_w(LambertBranch::minus_one, -0.1), -3.5771520639572971414) <= 1e-14);
  CHECK_THROWS_AS(lambert_w(LambertBranch::principal, -0.4), DomainError);
  CHECK_THROWS_AS(lambert_w(LambertBranch::minus_one, 0.1), DomainError);
}

TEST_CASE("lambert_w round trip at 1000 log-spaced points per branch") {
  const double e1 = std::exp(-1.0);
  for (int i = 0; i < 1000; ++i) {
    const double s = i / 999.0;
    const double x0 = -e1 * (1.0 - std::pow(10.0, -12.0 + 12.0 * s) * 0.999);
    const double xp = std::pow(10.0, -8.0 + 14.0 * s);
    for (double x : {x0, xp}) {
      const double w = lambert_w(LambertBranch::principal, x);
      CAPTURE(x);
      CHECK(w >= -1.0);
      CHECK(std::abs(w * std::exp(w) - x) <= 1e-12 * std::abs(x));
    }
    const double xm = -e1 * std::pow(10.0, -200.0 * s) * (1.0 - 1e-9);
    const double wm = lambert_w(LambertBranch::minus_one, xm);
    CAPTURE(xm);
    CHECK(wm <= -1.0);
    CHECK(std::abs(wm * std::exp(wm) - xm) <= 1e-12 * std::abs(xm));
  }
}

TEST_CASE("xi_bar: zero at the origin, first sign changes, values") {
  CHECK(xi_bar(0.0) == 0.0);
  CHECK(xi_bar(14.1) * xi_bar(14.2) < 0.0);
  CHECK(xi_bar(21.0) * xi_bar(21.1) < 0.0);
  // mpmath, 30 digits
  struct Row { double t, want; };
  const Row rows[] = {{0.5, 0.49111412484390315}, {1.0, 0.34002714827015346}, {10.0, 0.6921218784320949},
                      {20.0, -0.5126916983605295}, {45.0, 1.4543525897045735}, {80.0, -0.8797925112899494}};
  for (const auto& r : rows) {
    CAPTURE(r.t);
    CHECK(std::abs(xi_bar(r.t) - r.want) <= 1e-10);
  }
}

TEST_CASE("xi_bar has exactly ten sign changes on [0, 50]") {
  int changes = 0;
  double prev = xi_bar(0.01);
  for (double t = 0.02; t <= 50.0; t += 0.01) {
    const double v = xi_bar(t);
    changes += (v > 0) != (prev > 0);
    prev = v;
  }
  CHECK(changes == 10);
}

TEST_CASE("xi_bar assembled product is real") {
  for (double t : {3.0, 17.5, 33.3, 49.0, 77.0, 140.0}) {
    CAPTURE(t);
    CHECK(xi_bar_detail(t).imag_residue <= 1e-8);
  }
}

TEST_CASE("golden self-test table passes") {
  for (const auto& line : run_selftest()) {
    CAPTURE(line.name);
    CHECK(line.pass);
  }
}

}
