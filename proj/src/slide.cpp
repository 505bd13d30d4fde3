#include "lyapspec/slide.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lyapspec/errors.hpp"

namespace lyapspec {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

double SlideFunction::value_at(double t) const {
  if (t < t_inf) return kInf;
  if (kind == SlideKind::parabolic && t >= d) return 0.0;
  return eval(t).v;
}

double SlideFunction::slope_at(double t) const {
  if (t < t_inf) throw DomainError("slope_at: t below t_inf");
  if (kind == SlideKind::parabolic && t >= d) return 0.0;
  return eval(t).d;
}

LimitEstimate estimate_limit(const std::function<double(double)>& fn_of_h,
                             double h0, double h_min) {
  std::vector<double> v;
  for (double h = h0; h >= h_min * (1.0 - 1e-12); h /= 10.0) {
    v.push_back(fn_of_h(h));
  }
  const size_t n = v.size();
  const double last = v[n - 1], prev = v[n - 2];

  // Blow-up: |v| increasing over the whole ladder without the increments
  // shrinking geometrically. Catches both power-law (ratios ~ 10) and
  // logarithmic (increments roughly constant) divergence.
  bool increasing = true, decreasing = true;
  for (size_t i = 1; i < n; ++i) {
    if (std::abs(v[i]) <= std::abs(v[i - 1])) increasing = false;
    if (std::abs(v[i]) >= std::abs(v[i - 1])) decreasing = false;
  }
  (void)decreasing;
  const double d_last = std::abs(last - prev);
  const double d_prev = std::abs(prev - v[n - 3]);
  if ((increasing && d_last > 0.45 * d_prev && std::abs(last) > 3.0) ||
      std::abs(last) > 1e12) {
    return {last > 0 ? LimitEstimate::Kind::plus_inf
                     : LimitEstimate::Kind::minus_inf,
            last};
  }

  // Aitken delta-squared on the tail of the ladder when it helps.
  double est = last;
  const double den = (v[n - 1] - v[n - 2]) - (v[n - 2] - v[n - 3]);
  if (std::abs(den) > 1e-300) {
    const double ait =
        v[n - 1] - (v[n - 1] - v[n - 2]) * (v[n - 1] - v[n - 2]) / den;
    if (std::abs(ait - last) < 10.0 * d_last + 1e-9) est = ait;
  }
  if (d_last > 1e-4 * (1.0 + std::abs(last)) && d_last > 2e-2) {
    throw ConvergenceError("limit did not stabilize; last extrapolants " +
                           fmt(prev) + ", " + fmt(last));
  }
  return {LimitEstimate::Kind::finite, est};
}

namespace {

Dual eval_poly_corner(const SlideSpec& s, double t) {
  // c (d-t)^gamma + kappa (d-t), zero beyond d
  if (t >= s.d) return {0.0, 0.0};
  const Dual u = Dual(s.d) - Dual::var(t);
  return Dual(s.c) * pow(u, Dual(s.gamma)) + Dual(s.kappa) * u;
}

Dual eval_log_geometric(const SlideSpec& s, double t) {
  // log(q^-x / (1 - q^-x)) = -x log q - log(1 - q^-x) with x = t - shift,
  // written through expm1 so both ends of the domain stay accurate.
  const Dual y = (Dual::var(t) - Dual(s.shift)) * std::log(s.q);
  return -y - log(-expm1(-y));
}

std::vector<double> validation_grid(const SlideFunction& f, int points) {
  // Clusters near t_inf and d, uniform in between, a few plateau/tail points
  // beyond d.
  std::vector<double> g;
  const bool finite_left = std::isfinite(f.t_inf);
  const double left = finite_left ? f.t_inf : f.d - 40.0;
  const double span = f.d - left;
  const int cluster = 24;
  if (finite_left) {
    for (int k = cluster; k >= 1; --k) {
      g.push_back(f.t_inf + span * std::pow(10.0, -8.0 * k / cluster));
    }
  }
  const int mid = std::max(16, points - 2 * cluster);
  for (int i = 0; i <= mid; ++i) {
    const double t = left + span * (0.05 + 0.93 * i / mid);
    if (t > f.t_inf) g.push_back(t);
  }
  for (int k = 1; k <= cluster; ++k) {
    g.push_back(f.d - span * 0.05 * std::pow(10.0, -6.0 * k / cluster));
  }
  if (f.kind == SlideKind::non_parabolic) {
    const double right = std::min(f.t_probe_max, f.d + 40.0);
    for (int i = 1; i <= cluster; ++i) {
      g.push_back(f.d + (right - f.d) * i / cluster);
    }
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

void validate(const SlideFunction& f, const SlideBuildOptions& opts) {
  const auto grid = validation_grid(f, opts.grid_points);
  std::vector<double> val(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) val[i] = f.value_at(grid[i]);

  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    if (val[i + 1] > val[i] + 1e-12 * (1.0 + std::abs(val[i]))) {
      throw ValidationError("slide function increases between t=" +
                            fmt(grid[i]) + " and t=" + fmt(grid[i + 1]));
    }
  }
  // Convexity via divided differences. The allowed slack combines the
  // documented budget with the cancellation floor of the local grid spacing
  // (differences of nearby values lose ~eps * |f| absolutely).
  for (size_t i = 0; i + 2 < grid.size(); ++i) {
    const double h1 = grid[i + 1] - grid[i];
    const double h2 = grid[i + 2] - grid[i + 1];
    const double s1 = (val[i + 1] - val[i]) / h1;
    const double s2 = (val[i + 2] - val[i + 1]) / h2;
    const double fmag =
        std::max({std::abs(val[i]), std::abs(val[i + 1]), std::abs(val[i + 2])});
    const double scale = 1.0 + std::max({fmag, std::abs(s1), std::abs(s2)});
    const double cancel = 8.0 * 2.2e-16 * fmag * (1.0 / h1 + 1.0 / h2);
    if (s2 - s1 < -(opts.convexity_slack * scale + cancel)) {
      throw ValidationError("slide function is concave near t=" +
                            fmt(grid[i + 1]));
    }
  }
  // Slope evaluator must be non-decreasing and consistent with the values.
  double prev_slope = -kInf;
  for (size_t i = 0; i < grid.size(); ++i) {
    const double s = f.slope_at(grid[i]);
    if (s < prev_slope - opts.convexity_slack * (1.0 + std::abs(s))) {
      throw ValidationError("slope_at decreases at t=" + fmt(grid[i]));
    }
    prev_slope = s;
  }
  const double fd = f.value_at(f.d);
  if (std::abs(fd) > opts.root_tol) {
    throw ValidationError("f(d) = " + fmt(fd) + " is not a zero");
  }
}

}  // namespace

SlideFunction build_slide(const SlideSpec& spec, const SlideBuildOptions& opts) {
  SlideFunction f;
  f.t_inf = spec.t_inf;
  f.kind = spec.kind;
  f.t_probe_max = spec.t_probe_max;

  if (spec.family == "poly_corner") {
    f.kind = SlideKind::parabolic;
    f.d = spec.d;
    const SlideSpec s = spec;
    f.eval = [s](double t) { return eval_poly_corner(s, t); };
  } else if (spec.family == "log_geometric") {
    if (!(spec.q > 1.0)) throw ConfigError("log_geometric requires q > 1");
    f.kind = SlideKind::non_parabolic;
    f.t_inf = spec.shift;
    f.d = spec.shift + std::log(2.0) / std::log(spec.q);
    const SlideSpec s = spec;
    f.eval = [s](double t) { return eval_log_geometric(s, t); };
  } else if (spec.family == "custom") {
    f.d = spec.d;
    f.eval = spec.eval;
  } else {
    throw ConfigError("unknown slide family '" + spec.family + "'");
  }

  if (!(f.d > f.t_inf)) throw DomainError("slide requires d > t_inf");

  // One-sided limits. For t_inf = -inf the left probes walk out to -2^k.
  const bool finite_left = std::isfinite(f.t_inf);
  const double span = finite_left ? std::max(1.0, f.d - f.t_inf) : 1.0;
  auto slope_near_left = [&](double h) {
    return finite_left ? f.eval(f.t_inf + h * span).d
                       : f.eval(f.d - 40.0 / h).d;
  };
  auto value_near_left = [&](double h) {
    return finite_left ? f.eval(f.t_inf + h * span).v
                       : f.eval(f.d - 40.0 / h).v;
  };
  const auto a_est = estimate_limit(slope_near_left);
  f.a_f = a_est.kind == LimitEstimate::Kind::finite ? a_est.value : -kInf;
  const auto lim_est = estimate_limit(value_near_left);
  f.limit_at_t_inf =
      lim_est.kind == LimitEstimate::Kind::finite ? lim_est.value : kInf;
  f.ctype = std::isfinite(f.limit_at_t_inf) ? ContinuityType::discontinuous
                                            : ContinuityType::continuous;

  if (f.kind == SlideKind::parabolic) {
    const auto b_est =
        estimate_limit([&](double h) { return f.eval(f.d - h * span).d; });
    f.b_f = b_est.kind == LimitEstimate::Kind::finite ? b_est.value : -kInf;
  } else {
    // slope at +inf: geometric ladder in T, increasing slope converges.
    const auto b_est = estimate_limit(
        [&](double h) { return f.eval(std::min(1.0 / h, f.t_probe_max) * 4.0).d; },
        1e-1, 1e-4);
    f.b_f = b_est.value;
  }
  if (f.b_f > 0.0) f.b_f = 0.0;

  if (opts.validate) validate(f, opts);
  return f;
}

std::pair<double, double> boundary_slopes(const SlideFunction& f) {
  return {f.a_f, f.b_f};
}

double newton_map(const SlideFunction& f, double t) {
  if (t < f.t_inf) throw InfiniteValueError("newton_map: t below t_inf");
  const double v = f.value_at(t);
  if (!std::isfinite(v)) throw InfiniteValueError("newton_map: f(t) infinite");
  const double s = f.slope_at(t);
  if (std::abs(s) < 1e-12) {
    throw DerivativeZeroError("newton_map: f'(t) ~ 0 (plateau) at t=" + fmt(t));
  }
  return t - v / s;
}

SupportCase classify_support_case(const SlideFunction& f, double alpha) {
  const double ma = -alpha;
  if (ma > f.a_f && ma < f.b_f) return SupportCase::interior;
  if (f.ctype == ContinuityType::discontinuous && std::isfinite(ma) &&
      ma <= f.a_f) {
    return SupportCase::boundary_discontinuous;
  }
  if (f.kind == SlideKind::parabolic && f.b_f <= ma && ma < 0.0) {
    return SupportCase::boundary_parabolic;
  }
  return SupportCase::none;
}

double slope_inverse(const SlideFunction& f, double alpha) {
  const double target = -alpha;
  // Bracket: slope -> a_f at t_inf+ and -> b_f at d- (parabolic) or +inf.
  double lo, hi;
  if (std::isfinite(f.t_inf)) {
    const double span = std::max(1.0, f.d - f.t_inf);
    double eps = 1e-3 * span;
    lo = f.t_inf + eps;
    int guard = 0;
    while (f.slope_at(lo) >= target) {
      eps *= 0.125;
      lo = f.t_inf + eps;
      if (++guard > 60) throw ConvergenceError("slope_inverse: no left bracket");
    }
  } else {
    lo = f.d - 1.0;
    int guard = 0;
    while (f.slope_at(lo) >= target) {
      lo = f.d - (f.d - lo) * 2.0;
      if (++guard > 80) throw ConvergenceError("slope_inverse: no left bracket");
    }
  }
  if (f.kind == SlideKind::parabolic) {
    const double span = std::max(1.0, f.d - (std::isfinite(f.t_inf) ? f.t_inf : f.d - 1.0));
    double eps = 1e-6 * span;
    hi = f.d - eps;
    int guard = 0;
    while (f.slope_at(hi) <= target) {
      eps *= 0.125;
      hi = f.d - eps;
      if (++guard > 60) throw ConvergenceError("slope_inverse: no right bracket");
    }
  } else {
    hi = std::max(f.d + 1.0, lo + 1.0);
    int guard = 0;
    while (f.slope_at(hi) <= target) {
      hi = f.d + (hi - f.d) * 2.0;
      if (++guard > 80) throw ConvergenceError("slope_inverse: no right bracket");
    }
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f.slope_at(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

SupportLine support_line(const SlideFunction& f, double alpha) {
  switch (classify_support_case(f, alpha)) {
    case SupportCase::interior: {
      const double t = slope_inverse(f, alpha);
      return {-alpha, f.value_at(t) + alpha * t, t};
    }
    case SupportCase::boundary_discontinuous:
      return {-alpha, f.limit_at_t_inf + alpha * f.t_inf, f.t_inf};
    case SupportCase::boundary_parabolic:
      return {-alpha, alpha * f.d, f.d};
    case SupportCase::none:
      break;
  }
  throw NoSupportLineError("no support line with slope " + fmt(-alpha));
}

double s_newton(const SlideFunction& f, double alpha) {
  switch (classify_support_case(f, alpha)) {
    case SupportCase::interior: {
      if (alpha == 0.0) throw DivisionError("s_newton: alpha = 0");
      const double t = slope_inverse(f, alpha);
      return t + f.value_at(t) / alpha;
    }
    case SupportCase::boundary_discontinuous:
      if (alpha == 0.0) throw DivisionError("s_newton: alpha = 0");
      return f.t_inf + f.limit_at_t_inf / alpha;
    case SupportCase::boundary_parabolic:
      return f.d;
    case SupportCase::none:
      break;
  }
  throw NoSupportLineError("s_newton undefined for alpha " + fmt(alpha));
}

double legendre(const SlideFunction& f, double alpha) {
  const double ma = -alpha;
  if (ma > 0.0) return -kInf;
  if (ma > f.a_f && ma < f.b_f) {
    const double t = slope_inverse(f, alpha);
    return f.value_at(t) + alpha * t;
  }
  if (f.ctype == ContinuityType::discontinuous && ma <= f.a_f) {
    return f.limit_at_t_inf + alpha * f.t_inf;
  }
  if (f.kind == SlideKind::parabolic) {
    // b_f <= -alpha <= 0 here
    return alpha * f.d;
  }
  // non-parabolic with b_f <= -alpha <= 0: limit of f(t) + alpha t at +inf.
  // The function is non-increasing there, so the ladder either stabilizes
  // (only possible at -alpha = b_f) or runs off to -inf.
  const auto est = estimate_limit(
      [&](double h) {
        const double t = std::min(1.0 / h, 1e8) * std::max(1.0, f.d);
        return f.value_at(t) + alpha * t;
      },
      1e-1, 1e-7);
  if (est.kind == LimitEstimate::Kind::finite) return est.value;
  if (est.kind == LimitEstimate::Kind::minus_inf) return -kInf;
  throw ConvergenceError("legendre: tail limit did not stabilize");
}

}  // namespace lyapspec
