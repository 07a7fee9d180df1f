#pragma once

#include <cmath>
#include <numbers>

#include "nleig/specfun.hpp"

namespace nleig::specfun::detail {

// Error-free transformations; a value is carried as hi + lo.
struct DoubleDouble {
  double hi;
  double lo;
};

inline DoubleDouble two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DoubleDouble two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DoubleDouble dd_add(DoubleDouble a, DoubleDouble b) {
  DoubleDouble s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return two_sum(s.hi, s.lo);
}

inline DoubleDouble dd_mul(DoubleDouble a, DoubleDouble b) {
  DoubleDouble p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return two_sum(p.hi, p.lo);
}

// pi as a double-double.
inline constexpr DoubleDouble kPiDD{3.141592653589793116, 1.2246467991473532e-16};

// cos(x_hi + x_lo - phase) where phase = c * pi, accurate to the rounding of
// the inputs rather than the rounding of the large sum.
inline void cos_sin_shifted(DoubleDouble x, double c, double& cos_out, double& sin_out) {
  DoubleDouble ph = dd_mul({c, 0.0}, kPiDD);
  DoubleDouble chi = dd_add(x, {-ph.hi, -ph.lo});
  // Reduce chi.hi exactly by a multiple of 2 pi carried in double-double.
  double k = std::nearbyint(chi.hi / (2.0 * std::numbers::pi));
  DoubleDouble red = dd_add(chi, dd_mul({-2.0 * k, 0.0}, kPiDD));
  double r = red.hi + red.lo;
  cos_out = std::cos(r);
  sin_out = std::sin(r);
}

// J and Y with the argument carried in double-double (bessel.cpp).
BesselJY bessel_jy_dd(double nu, DoubleDouble x);

}  // namespace nleig::specfun::detail
