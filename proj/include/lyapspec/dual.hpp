#pragma once

#include <cmath>

namespace lyapspec {

// First-order dual number. Evaluating a pressure/series formula in Dual
// arithmetic yields the value together with the exact derivative of the
// computed expression with respect to the active parameter (always the
// temperature t here). Keeping value and slope on one code path is what
// makes tangency constructions consistent to machine precision.
struct Dual {
  double v = 0.0;  // value
  double d = 0.0;  // derivative w.r.t. the active parameter

  constexpr Dual() = default;
  constexpr Dual(double value) : v(value) {}
  constexpr Dual(double value, double deriv) : v(value), d(deriv) {}

  // The active variable itself: d/dt t = 1.
  static constexpr Dual var(double value) { return {value, 1.0}; }
};

constexpr Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
constexpr Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
constexpr Dual operator-(Dual a) { return {-a.v, -a.d}; }
constexpr Dual operator*(Dual a, Dual b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d};
}
constexpr Dual operator/(Dual a, Dual b) {
  return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}

constexpr Dual& operator+=(Dual& a, Dual b) { a = a + b; return a; }
constexpr Dual& operator-=(Dual& a, Dual b) { a = a - b; return a; }
constexpr Dual& operator*=(Dual& a, Dual b) { a = a * b; return a; }

inline Dual exp(Dual a) {
  const double e = std::exp(a.v);
  return {e, e * a.d};
}

inline Dual log(Dual a) { return {std::log(a.v), a.d / a.v}; }

inline Dual expm1(Dual a) {
  const double e = std::expm1(a.v);
  return {e, (e + 1.0) * a.d};
}

inline Dual log1p(Dual a) { return {std::log1p(a.v), a.d / (1.0 + a.v)}; }

inline Dual sqrt(Dual a) {
  const double s = std::sqrt(a.v);
  return {s, 0.5 * a.d / s};
}

// a^b for a > 0.
inline Dual pow(Dual a, Dual b) { return exp(b * log(a)); }

constexpr bool operator<(Dual a, Dual b) { return a.v < b.v; }
constexpr bool operator>(Dual a, Dual b) { return a.v > b.v; }

}  // namespace lyapspec
