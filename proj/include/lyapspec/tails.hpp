#pragma once

#include <limits>

#include "lyapspec/dual.hpp"

namespace lyapspec::tails {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct DualBracket {
  Dual lo, hi;  // certified lo.v <= true value <= hi.v
  Dual mid() const { return {0.5 * (lo.v + hi.v), 0.5 * (lo.d + hi.d)}; }
  double width() const { return hi.v - lo.v; }
};

// Convergence test for sums of x^{-u} log^{-v} x over integer grids.
inline bool power_log_converges(double u, double v) {
  return u > 1.0 || (u == 1.0 && v > 1.0);
}

// integral_a^inf x^{-u} log(x)^{-v} dx for a >= 2.
// Requires power_log_converges(u.v, v.v); the derivative components of u and
// v flow through so the result is the exact derivative of the quadrature
// representation.
Dual power_log_integral(Dual u, Dual v, double a);

// Certified bracket on sum_{k>=0} f(x0 + k) with f(x) = x^{-u} log^{-v} x,
// x0 >= 2, with relative bracket width below rel_width. Terms are summed
// explicitly past x = 64 until the integral-comparison bracket for the
// remainder (f is decreasing and convex there) is tight enough.
DualBracket power_log_tail_sum(Dual u, Dual v, double x0,
                               double rel_width = 1e-10);

}  // namespace lyapspec::tails
