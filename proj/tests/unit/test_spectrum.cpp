#include <cmath>

#include "doctest.h"
#include "nleig/asymptotics.hpp"
#include "nleig/error.hpp"
#include "nleig/spectrum.hpp"

using namespace nleig;
using namespace nleig::spectrum;
using models::GeneratingFunction;

namespace {

constexpr double kCosE1 = 1.60257293201;
constexpr double kCosE2 = 2.38835814306;

}  // namespace

TEST_SUITE("spectrum") {

TEST_CASE("classify examples") {
  const auto c = GeneratingFunction::cosine();
  const auto cfg = default_shooting_config(c);
  const ClassifyResult low = classify(c, 0.3, cfg);
  CHECK(low.cls == 0);
  CHECK(low.settled);
  CHECK(classify(c, 0.5 * (kCosE1 + kCosE2), cfg).cls == 1);
  const auto b = GeneratingFunction::bessel(0.0);
  const auto bcfg = default_shooting_config(b);
  for (int n = 1; n <= 4; ++n) {
    const EigenResult r = find_eigen(b, n, 1e-10);
    REQUIRE(r.ok);
    CAPTURE(n);
    const ClassifyResult above = classify(b, r.E * (1 + 1e-6), bcfg);
    CHECK(above.cls == n);
    CHECK(above.maxima == n + 1);
    CHECK(classify(b, r.E * (1 - 1e-6), bcfg).cls == n - 1);
  }
  CHECK_THROWS_AS(classify(c, 0.0, cfg), DomainError);
}

TEST_CASE("low cosine and bessel eigenvalues") {
  const auto c = GeneratingFunction::cosine();
  const EigenResult e1 = find_eigen(c, 1, 1e-11);
  const EigenResult e10 = find_eigen(c, 10, 1e-11);
  CHECK(std::abs(e1.E - kCosE1) <= 1e-10);
  CHECK(std::abs(e10.E - 5.57155243132) <= 1e-9);
  CHECK(e1.lo < e1.E);
  CHECK(e1.E <= e1.hi);
  CHECK(e1.residual <= 1e-11);
  CHECK(e1.method == Method::bisection);
  CHECK(e1.maxima == 1);
  CHECK(std::abs(find_eigen(GeneratingFunction::bessel(1.0), 4, 1e-11).E - 2.43164199511) <= 1e-9);
  CHECK(std::abs(find_eigen(GeneratingFunction::airy(), 1, 1e-11).E - 1.2580395352) <= 1e-9);
}

TEST_CASE("reciprocal-gamma eigenvalues to three digits") {
  const auto f = GeneratingFunction::recip_gamma();
  const EigenResult r10 = find_eigen(f, 10, 1e-8);
  const EigenResult r20 = find_eigen(f, 20, 1e-8);
  REQUIRE(r10.ok);
  REQUIRE(r20.ok);
  CHECK(std::abs(r10.E - 5.50e8) <= 0.005e8);
  CHECK(std::abs(r20.E - 2.86e23) <= 0.005e23);
  CHECK(r10.lambda == 19.0);
  CHECK(std::abs(std::pow(10.0, r20.log10_E) / r20.E - 1.0) <= 1e-12);
  CHECK(std::abs(find_eigen(f, 1, 1e-8).E - 0.839358329781) <= 1e-8);
}

TEST_CASE("cosine E_100 follows the growth law") {
  const EigenResult r = find_eigen(GeneratingFunction::cosine(), 100, 1e-10);
  REQUIRE(r.ok);
  const double ratio = r.E / (std::pow(2.0, 5.0 / 6.0) * 10.0);
  CHECK(ratio > 0.98);
  CHECK(ratio < 1.02);
}

TEST_CASE("backward refinement agrees with bisection") {
  const auto c = GeneratingFunction::cosine();
  const auto b = GeneratingFunction::bessel(0.0);
  const auto g = GeneratingFunction::recip_gamma();
  const EigenResult c1 = refine_backward(c, 1, 0.0, default_shooting_config(c));
  CHECK(c1.method == Method::backward);
  CHECK(std::abs(c1.E / find_eigen(c, 1, 1e-11).E - 1.0) <= 1e-8);
  CHECK(std::abs(refine_backward(b, 5, 0.0, default_shooting_config(b)).E / find_eigen(b, 5, 1e-11).E - 1.0) <= 1e-8);
  CHECK(std::abs(refine_backward(g, 1, 0.0, default_shooting_config(g)).E / find_eigen(g, 1, 1e-9).E - 1.0) <= 1e-6);
}

TEST_CASE("spectrum scans") {
  const auto c = GeneratingFunction::cosine();
  const auto cs = spectrum_scan(c, 1, 20, 1e-10, default_shooting_config(c), 2);
  REQUIRE(cs.size() == 20);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    CHECK(cs[i].ok);
    CHECK(cs[i].n == static_cast<int>(i) + 1);
    if (i > 0) CHECK(cs[i].E > cs[i - 1].E);
  }
  const auto b = GeneratingFunction::bessel(0.0);
  const auto bs = spectrum_scan(b, 1, 5, 1e-10, default_shooting_config(b), 1);
  for (const auto& r : bs) {
    CHECK(r.ok);
    CHECK(r.maxima == r.n);
  }
  CHECK(std::abs(bs[0].E - 1.36300679385) <= 1e-9);
  CHECK(std::abs(bs[4].E - 2.56891325607) <= 1e-9);
}

TEST_CASE("scan results do not depend on the worker count") {
  const auto c = GeneratingFunction::airy();
  const auto cfg = default_shooting_config(c);
  const auto one = spectrum_scan(c, 1, 6, 1e-10, cfg, 1);
  const auto three = spectrum_scan(c, 1, 6, 1e-10, cfg, 3);
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].E == three[i].E);
    CHECK(one[i].lo == three[i].lo);
    CHECK(one[i].hi == three[i].hi);
  }
  const auto picked = spectrum_scan(c, std::vector<int>{6, 2}, 1e-10, cfg, 2);
  CHECK(picked[0].E == one[5].E);
  CHECK(picked[1].E == one[1].E);
}

TEST_CASE("classifier is nondecreasing across a bracket") {
  const auto c = GeneratingFunction::cosine();
  const auto cfg = default_shooting_config(c);
  const EigenResult e3 = find_eigen(c, 3, 1e-10);
  int prev = -1;
  for (int i = 0; i < 50; ++i) {
    const double E = e3.E * (0.5 + i / 49.0);
    const int k = classify(c, E, cfg).cls;
    CAPTURE(E);
    CHECK(k >= prev);
    prev = k;
  }
}

TEST_CASE("final bracket straddles the class jump") {
  const auto b = GeneratingFunction::bessel(1.0);
  const auto cfg = default_shooting_config(b);
  for (int n = 1; n <= 3; ++n) {
    const EigenResult r = find_eigen(b, n, 1e-10, cfg);
    CAPTURE(n);
    CHECK(r.class_lo == n - 1);
    CHECK(r.class_hi == n);
    CHECK(classify(b, r.lo, cfg).cls == n - 1);
    CHECK(classify(b, r.hi, cfg).cls == n);
  }
}

TEST_CASE("check_monotone flags decreasing neighbours only") {
  std::vector<EigenResult> rs(4);
  const double logs[] = {0.1, 0.2, 0.15, 0.3};
  for (int i = 0; i < 4; ++i) {
    rs[i].n = i + 1;
    rs[i].log10_E = logs[i];
  }
  check_monotone(rs);
  CHECK(rs[0].ok);
  CHECK(rs[1].ok);
  CHECK_FALSE(rs[2].ok);
  CHECK(rs[3].ok);
}

TEST_CASE("xibar spectrum has a hyperfine triple") {
  const auto f = GeneratingFunction::xi_bar();
  const auto rs = spectrum_scan(f, 1, 5, 1e-9, default_shooting_config(f), 0);
  const double frozen[] = {5.18706202, 7.39965023, 8.79996069, 8.79996713, 8.799967155};
  for (int i = 0; i < 5; ++i) {
    CAPTURE(i + 1);
    CHECK(rs[i].ok);
    CHECK(std::abs(rs[i].E - frozen[i]) <= 1e-7 * frozen[i]);
  }
  CHECK(rs[3].E - rs[2].E < 1e-5);
  CHECK(rs[4].E - rs[3].E < 1e-6);
  CHECK(rs[2].E - rs[1].E > 1.0);
}

TEST_CASE("find_eigen argument errors") {
  const auto c = GeneratingFunction::cosine();
  CHECK_THROWS_AS(find_eigen(c, 0, 1e-10), DomainError);
  CHECK_THROWS_AS(find_eigen(c, 1, 1e-13), DomainError);
  CHECK_THROWS_AS(spectrum_scan(c, 3, 2, 1e-10, default_shooting_config(c)), DomainError);
  const auto failed = spectrum_scan(c, std::vector<int>{1}, 2.0, default_shooting_config(c), 1);
  CHECK_FALSE(failed[0].ok);
  CHECK_FALSE(failed[0].error.empty());
}

}
