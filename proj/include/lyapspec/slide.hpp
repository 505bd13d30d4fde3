#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "lyapspec/dual.hpp"

namespace lyapspec {

enum class SlideKind { parabolic, non_parabolic };
enum class ContinuityType { continuous, discontinuous };

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Convex non-increasing extended-real function that is +inf left of t_inf and
// has a zero at d. Immutable; all operations on it are pure.
//
// t_inf may be -inf (finite-branch systems, whose pressure is finite on all
// of R). The raw evaluator is only consulted on (t_inf, +inf); value_at
// handles the +inf region and the parabolic plateau.
struct SlideFunction {
  double t_inf = 0.0;
  double d = 1.0;
  SlideKind kind = SlideKind::non_parabolic;
  ContinuityType ctype = ContinuityType::continuous;
  std::function<Dual(double)> eval;  // f and f' on the open interior

  double a_f = -kInf;          // lim_{t -> t_inf+} f'(t)
  double b_f = 0.0;            // Eq.-style right slope limit, <= 0
  double limit_at_t_inf = kInf;  // lim_{t -> t_inf+} f(t)

  double t_probe_max = 1e3;  // right end used by searches and limits

  double value_at(double t) const;
  double slope_at(double t) const;
};

struct SupportLine {
  double slope = 0.0;       // equals -alpha
  double intercept = 0.0;   // y-axis value; equals F(alpha)
  double tangency_t = 0.0;  // abscissa of tangency (t_inf or d in corner cases)
};

// Closed-form slide families used for specs, tests and the CLI.
//   poly_corner:    f(t) = c (d-t)^gamma + kappa (d-t) on (t_inf, d), 0 beyond
//                   (parabolic; discontinuous type)
//   log_geometric:  f(t) = log(q^{-(t-shift)} / (1 - q^{-(t-shift)}))
//                   (non-parabolic continuous; the pressure of a geometric
//                   Lüroth partition with ratio 1/q, shifted by `shift`)
struct SlideSpec {
  std::string family;  // "poly_corner" | "log_geometric" | "custom"
  double t_inf = 0.0;
  double d = 1.0;
  SlideKind kind = SlideKind::non_parabolic;
  // poly_corner
  double c = 1.0;
  double gamma = 2.0;
  double kappa = 0.0;
  // log_geometric
  double q = 2.0;
  double shift = 0.0;
  // custom
  std::function<Dual(double)> eval;
  double t_probe_max = 1e3;
};

struct SlideBuildOptions {
  int grid_points = 512;
  double convexity_slack = 1e-8;
  double root_tol = 1e-9;  // |f(d)| allowed
  bool validate = true;
};

// Builds and validates a SlideFunction: checks monotonicity/convexity on a
// grid refined near t_inf and d, populates a_f, b_f and limit_at_t_inf by
// one-sided numerical limits, and classifies the continuity type.
SlideFunction build_slide(const SlideSpec& spec, const SlideBuildOptions& opts = {});

// (a_f, b_f) per the slide definition; b_f is the left slope at d for
// parabolic functions and the slope limit at +inf otherwise.
std::pair<double, double> boundary_slopes(const SlideFunction& f);

// Classical Newton map N_f(t) = t - f(t)/f'(t).
double newton_map(const SlideFunction& f, double t);

// Unique t with f'(t) = -alpha, by bisection on the strictly increasing
// slope (interior case only). Tolerance 1e-12 in t.
double slope_inverse(const SlideFunction& f, double alpha);

// Support line of slope -alpha tangent to the graph (three cases:
// interior tangency, discontinuous corner at t_inf, parabolic corner at d).
SupportLine support_line(const SlideFunction& f, double alpha);

// S-Newton-Raphson map: x-intercept of the support line of slope -alpha.
double s_newton(const SlideFunction& f, double alpha);

// Legendre transform F(alpha) = inf_t {f(t) + alpha t}, five-case evaluation.
// Returns -inf when -alpha > 0 (and possibly in the non-parabolic limit case).
double legendre(const SlideFunction& f, double alpha);

enum class SupportCase { interior, boundary_discontinuous, boundary_parabolic, none };
SupportCase classify_support_case(const SlideFunction& f, double alpha);

// One-sided limit extraction on a geometric ladder with extrapolation;
// declares +-inf on monotone blow-up. Shared by boundary_slopes and the
// continuity-type detection.
struct LimitEstimate {
  enum class Kind { finite, plus_inf, minus_inf } kind = Kind::finite;
  double value = 0.0;
};
LimitEstimate estimate_limit(const std::function<double(double)>& fn_of_h,
                             double h0 = 1e-2, double h_min = 1e-8);

}  // namespace lyapspec
