#include "lyapspec/tails.hpp"

#include <array>
#include <cmath>

#include "lyapspec/errors.hpp"

namespace lyapspec::tails {

namespace {

// 16-point Gauss-Legendre nodes/weights on [0, 1].
constexpr std::array<double, 16> kNodes = {
    0.005299532504175031, 0.0277124884633837,  0.06718439880608412,
    0.1222977958224985,   0.19106187779867811, 0.27099161117138625,
    0.35919822461037054,  0.4524937450811813,  0.5475062549188188,
    0.6408017753896295,   0.7290083888286137,  0.8089381222013219,
    0.8777022041775015,   0.9328156011939159,  0.9722875115366163,
    0.994700467495825};
constexpr std::array<double, 16> kWeights = {
    0.013576229705877047, 0.03112676196932395, 0.04757925584124639,
    0.06231448562776694,  0.07479799440828837, 0.08457825969750127,
    0.09130170752246179,  0.0947253052275343,  0.0947253052275343,
    0.09130170752246179,  0.08457825969750127, 0.07479799440828837,
    0.06231448562776694,  0.04757925584124639, 0.03112676196932395,
    0.013576229705877047};

// f(x) = x^{-u} log^{-v} x as a dual in (u, v).
Dual power_log_term(Dual u, Dual v, double x) {
  const double lx = std::log(x);
  return exp(-(u * lx) - (v * std::log(lx)));
}

}  // namespace

Dual power_log_integral(Dual u, Dual v, double a) {
  const double L = std::log(a);
  const Dual lambda = u - Dual(1.0);

  if (lambda.v <= 0.0) {
    // u == 1 exactly (u < 1 is divergent and rejected by callers).
    // integral = L^{1-v}/(v-1); the derivative picks up the lambda direction
    // through d/dlambda at 0+: -integral_L w^{1-v} dw = -L^{2-v}/(v-2),
    // and the v direction through -integral_L w^{-v} log w dw.
    if (v.v <= 1.0) return {kInf, 0.0};
    const double lv = v.v;
    const double base = std::pow(L, 1.0 - lv) / (lv - 1.0);
    double d = 0.0;
    d += lambda.d * (lv > 2.0 ? -std::pow(L, 2.0 - lv) / (lv - 2.0) : -kInf);
    const double dv_int =
        std::pow(L, 1.0 - lv) * ((lv - 1.0) * L + 1.0) / ((lv - 1.0) * (lv - 1.0));
    d += v.d * (-dv_int);
    return {base, d};
  }

  // Substitute w = log x, then y = lambda (w - L):
  //   I = e^{-lambda L} / lambda * integral_0^inf e^{-y} (L + y/lambda)^{-v} dy.
  Dual total{0.0, 0.0};
  for (int seg = 0; seg < 64; ++seg) {
    Dual part{0.0, 0.0};
    for (int i = 0; i < 16; ++i) {
      const double y = seg + kNodes[i];
      const Dual w = Dual(L) + Dual(y) / lambda;
      part += Dual(kWeights[i] * std::exp(-y)) * exp(-(v * log(w)));
    }
    total += part;
    if (seg >= 5 && part.v < 1e-17 * total.v) break;
  }
  return exp(-(lambda * L)) / lambda * total;
}

DualBracket power_log_tail_sum(Dual u, Dual v, double x0, double rel_width) {
  if (!power_log_converges(u.v, v.v)) {
    throw DivergentError("power_log_tail_sum: series diverges");
  }
  // Remainder sum_{k>=0} f(x + k): f decreasing convex on [x-1/2, inf) once
  // x >= 64, so trapezoid/midpoint comparison gives
  //   I(x) + f(x)/2 <= sum <= I(x - 1/2).
  // Terms are summed explicitly until a checkpoint bracket is tight enough
  // relative to the whole sum; checkpoints are geometrically spaced so a
  // slowly decaying tail costs O(final checkpoint) term evaluations.
  Dual head{0.0, 0.0};
  double x = x0;
  double checkpoint = std::max(64.0, x0);
  while (true) {
    if (x >= checkpoint) {
      const Dual f = power_log_term(u, v, x);
      const Dual lower = power_log_integral(u, v, x) + Dual(0.5) * f;
      const Dual upper = power_log_integral(u, v, x - 0.5);
      if (upper.v - lower.v <= rel_width * (head.v + lower.v) || x > 4e9) {
        return {head + lower, head + upper};
      }
      checkpoint *= 2.0;
    }
    head += power_log_term(u, v, x);
    x += 1.0;
  }
}

}  // namespace lyapspec::tails
