#include <cmath>
#include <string>
#include <vector>

#include "nleig/asymptotics.hpp"
#include "nleig/error.hpp"

namespace nleig::asymptotics {

namespace {

using boost::multiprecision::cpp_int;

constexpr int kMaxP = 60;

void check_p(int p_max) {
  if (p_max < 0 || p_max > kMaxP) throw DomainError("walk coefficients: p_max must lie in [0, 60]");
}

}  // namespace

WalkCoefficients walk_coefficients(int p_max) {
  check_p(p_max);
  WalkCoefficients w;
  w.p_max = p_max;
  cpp_int catalan = 1;  // C_0
  for (int p = 0; p <= p_max; ++p) {
    w.values.push_back(Rational(-catalan, cpp_int(1) << (2 * p + 1)));
    catalan = catalan * 2 * (2 * p + 1) / (p + 2);
  }
  return w;
}

WalkCoefficients walk_coefficients_dp(int p_max) {
  check_p(p_max);
  const int steps = 2 * p_max + 1;
  // weight[j]: summed weight of surviving walks now at position j (j >= 2)
  std::vector<Rational> weight(steps + 3, Rational(0));
  weight[2] = 1;
  const Rational step(-1, 2);
  std::vector<Rational> absorbed(steps + 1, Rational(0));
  for (int k = 1; k <= steps; ++k) {
    std::vector<Rational> next(weight.size(), Rational(0));
    for (std::size_t j = 2; j + 1 < weight.size(); ++j) {
      if (weight[j] == 0) continue;
      const Rational w = weight[j] * step;
      if (j - 1 == 1)
        absorbed[k] += w;
      else
        next[j - 1] += w;
      next[j + 1] += w;
    }
    weight.swap(next);
  }
  WalkCoefficients out;
  out.p_max = p_max;
  for (int p = 0; p <= p_max; ++p) out.values.push_back(absorbed[2 * p + 1]);
  return out;
}

double walk_partial_sum(const WalkCoefficients& w, double x) {
  double sum = 0.0;
  for (int p = w.p_max; p >= 0; --p) sum = sum * x * x + w.values[p].convert_to<double>();
  return sum * x;
}

}  // namespace nleig::asymptotics
