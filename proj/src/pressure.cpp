#include "lyapspec/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "lyapspec/errors.hpp"
#include "lyapspec/tails.hpp"

namespace lyapspec {

namespace {

constexpr long kBins = 1 << 17;

// log(e^a + e^b) for duals, stable against large magnitudes.
Dual dual_log_add_exp(Dual a, Dual b) {
  if (a.v == -kInf) return b;
  if (b.v == -kInf) return a;
  const Dual& hi = a.v >= b.v ? a : b;
  const Dual& lo = a.v >= b.v ? b : a;
  return hi + log1p(exp(lo - hi));
}

// Fixed point of the Moebius map x -> (ax+b)/(cx+d) lying in [0,1], together
// with D = -log|h'(x)| = 2 log(cx+d) (the matrices have |det| = 1).
double moebius_fixed_point_log_deriv(double a, double b, double c, double d) {
  // c x^2 + (d-a) x - b = 0, b,c >= 0: roots have product -b/c <= 0.
  const double s = a - d;
  const double disc = s * s + 4.0 * b * c;
  const double sq = std::sqrt(disc);
  double x;
  if (b > 0.0) {
    x = s >= 0.0 ? (s + sq) / (2.0 * c) : 2.0 * b / (sq - s);
  } else {
    // roots 0 and s/c; the composition fixes 0 when s <= 0 (parabolic word)
    const double other = s / c;
    x = (other > 0.0 && other <= 1.0) ? other : 0.0;
  }
  return 2.0 * std::log(c * x + d);
}

struct WordWalker {
  const MRLMap& map;
  int depth;
  long cutoff;
  const std::function<void(double)>& sink;
  std::vector<long> symbols;

  void run() {
    symbols.assign(static_cast<size_t>(depth), 0);
    const long first = map.first_branch();
    long last = cutoff;
    if (map.last_branch()) last = std::min(last, *map.last_branch());
    switch (map.family()) {
      case MapFamily::gauss:
      case MapFamily::renyi:
        walk_moebius(0, 1.0, 0.0, 0.0, 1.0, first, last);
        break;
      case MapFamily::luroth:
        walk_luroth(0, 0.0, first, last);
        break;
      case MapFamily::manneville_pomeau:
        walk_mp(0, first, last);
        break;
    }
  }

  void walk_moebius(int level, double a, double b, double c, double d,
                    long first, long last) {
    const bool gauss = map.family() == MapFamily::gauss;
    for (long s = first; s <= last; ++s) {
      const double sd = static_cast<double>(s);
      // M * M_s with M_s = [[0,1],[1,s]] (gauss) or [[1,s-1],[1,s]] (renyi)
      double na, nb, nc, nd;
      if (gauss) {
        na = b;
        nb = a + b * sd;
        nc = d;
        nd = c + d * sd;
      } else {
        na = a + b;
        nb = sd * (a + b) - a;
        nc = c + d;
        nd = sd * (c + d) - c;
      }
      if (level + 1 == depth) {
        sink(moebius_fixed_point_log_deriv(na, nb, nc, nd));
      } else {
        walk_moebius(level + 1, na, nb, nc, nd, first, last);
      }
    }
  }

  void walk_luroth(int level, double dsum, long first, long last) {
    for (long s = first; s <= last; ++s) {
      const double nd = dsum - std::log(map.partition().length(s));
      if (level + 1 == depth) {
        sink(nd);
      } else {
        walk_luroth(level + 1, nd, first, last);
      }
    }
  }

  void walk_mp(int level, long first, long last) {
    for (long s = first; s <= last; ++s) {
      symbols[static_cast<size_t>(level)] = s;
      if (level + 1 == depth) {
        sink(mp_word_log_deriv());
      } else {
        walk_mp(level + 1, first, last);
      }
    }
  }

  double mp_word_log_deriv() const {
    bool all_parabolic = true;
    for (long s : symbols) {
      if (s != 0) { all_parabolic = false; break; }
    }
    if (all_parabolic) return 0.0;  // the orbit of the parabolic fixed point
    double x = 0.5;
    for (int it = 0; it < 2000; ++it) {
      double y = x;
      for (int k = depth - 1; k >= 0; --k) {
        y = map.inverse_branch(symbols[static_cast<size_t>(k)], y);
      }
      const double step = std::abs(y - x);
      x = y;
      if (step < 1e-15) break;
    }
    double dsum = 0.0;
    double y = x;
    for (int k = 0; k < depth; ++k) {
      const long s = symbols[static_cast<size_t>(k)];
      dsum += map.log_deriv_on_branch(s, y);
      y = map.apply_on_branch(s, y);
    }
    if (!(std::abs(y - x) < 1e-10)) {
      throw ConvergenceError("periodic point for a near-parabolic word did not converge");
    }
    return dsum;
  }
};

}  // namespace

void for_each_word_log_deriv(const MRLMap& map, int depth, long cutoff,
                             const std::function<void(double)>& sink) {
  if (depth < 1) throw ConfigError("depth must be >= 1");
  if (cutoff < 1) throw ConfigError("cutoff must be >= 1");
  WordWalker w{map, depth, cutoff, sink, {}};
  w.run();
}

SeriesPressure pressure_series(const PartitionSequence& seq, double t) {
  const auto sum = seq.symbol_sum(Dual::var(t));
  if (sum.divergent) return {kInf, 0.0};
  const double lo = std::log(sum.bracket.lo.v);
  const double hi = std::log(sum.bracket.hi.v);
  return {0.5 * (lo + hi), 0.5 * (hi - lo)};
}

Dual pressure_series_dual(const PartitionSequence& seq, double t) {
  const auto sum = seq.symbol_sum(Dual::var(t));
  if (sum.divergent) return {kInf, 0.0};
  return Dual(0.5) * (log(sum.bracket.lo) + log(sum.bracket.hi));
}

PartitionEngine::PartitionEngine(MRLMap map, int depth, long cutoff)
    : map_(std::move(map)), depth_(depth), cutoff_(cutoff) {
  if (depth_ < 1 || depth_ > 12) throw ConfigError("engine depth out of range");
  if (cutoff_ < 1) throw ConfigError("engine cutoff must be >= 1");
  if (map_.family() == MapFamily::luroth) {
    // constant-slope branches: Z_n(t) = (sum_a a^t)^n exactly
    luroth_closed_form_ = true;
    return;
  }
  // per-branch log inf |T'| for the tail bound and the histogram scale
  const long first = map_.first_branch();
  long last = cutoff_;
  if (map_.last_branch()) last = std::min(last, *map_.last_branch());
  log_inf_deriv_.assign(static_cast<size_t>(last - first + 1), 0.0);
  double max_branch_log = 0.0;
  for (long a = first; a <= last; ++a) {
    double v = 0.0;
    switch (map_.family()) {
      case MapFamily::gauss:
      case MapFamily::renyi:
        v = 2.0 * std::log(static_cast<double>(a));
        break;
      case MapFamily::manneville_pomeau:
        v = a == 0 ? 0.0
                   : -std::log((1.0 - map_.mp_c()) * map_.partition().length(a));
        break;
      default:
        break;
    }
    log_inf_deriv_[static_cast<size_t>(a - first)] = v;
    // sup log|T'| on the branch; parabolic branch tops out at x = c
    double sup = v;
    switch (map_.family()) {
      case MapFamily::gauss:
      case MapFamily::renyi:
        sup = 2.0 * std::log(static_cast<double>(a + 1));
        break;
      case MapFamily::manneville_pomeau:
        if (a == 0) {
          sup = std::log1p((1.0 + map_.mp_s()) *
                           std::pow(map_.mp_c(), map_.mp_s()));
        }
        break;
      default:
        break;
    }
    max_branch_log = std::max(max_branch_log, sup);
  }
  const double d_max = depth_ * max_branch_log + 1e-9;
  bin_width_ = d_max / static_cast<double>(kBins);
  bin_count_.assign(static_cast<size_t>(kBins), 0.0);
  enumerate();
}

void PartitionEngine::enumerate() {
  // Counts are integers, so histogram accumulation is exact and the result
  // does not depend on any work split.
  for_each_word_log_deriv(map_, depth_, cutoff_, [this](double d) {
    long idx = static_cast<long>(d / bin_width_);
    idx = std::clamp<long>(idx, 0, kBins - 1);
    bin_count_[static_cast<size_t>(idx)] += 1.0;
    ++words_;
  });
}

Dual PartitionEngine::hist_log_sum(double t, bool use_left_edges) const {
  // log sum_b count_b exp(-t D_b) with D_b the selected bin edge, evaluated
  // stably around the dominating exponent.
  double best = -kInf;
  for (long b = 0; b < kBins; ++b) {
    if (bin_count_[static_cast<size_t>(b)] == 0.0) continue;
    const double edge = (use_left_edges ? b : b + 1) * bin_width_;
    best = std::max(best, -t * edge);
  }
  if (best == -kInf) return {-kInf, 0.0};
  Dual sum{0.0, 0.0};
  double anchor_edge = 0.0;
  // anchor at the dominating edge so exponents stay <= 0
  for (long b = 0; b < kBins; ++b) {
    if (bin_count_[static_cast<size_t>(b)] == 0.0) continue;
    const double edge = (use_left_edges ? b : b + 1) * bin_width_;
    if (-t * edge == best) { anchor_edge = edge; break; }
  }
  for (long b = 0; b < kBins; ++b) {
    const double cnt = bin_count_[static_cast<size_t>(b)];
    if (cnt == 0.0) continue;
    const double edge = (use_left_edges ? b : b + 1) * bin_width_;
    const Dual expo{-t * (edge - anchor_edge), -(edge - anchor_edge)};
    sum += Dual(cnt) * exp(expo);
  }
  return Dual(-t * anchor_edge, -anchor_edge) + log(sum);
}

Dual PartitionEngine::s_trunc(Dual t) const {
  if (map_.family() == MapFamily::luroth) {
    long last = cutoff_;
    if (map_.last_branch()) last = std::min(last, *map_.last_branch());
    Dual sum{0.0, 0.0};
    for (long a = 1; a <= last; ++a) {
      sum += exp(t * std::log(map_.partition().length(a)));
    }
    return sum;
  }
  Dual sum{0.0, 0.0};
  for (double ld : log_inf_deriv_) sum += exp(-(t * ld));
  return sum;
}

PartitionEngine::SFull PartitionEngine::s_full(Dual t) const {
  const Dual trunc = s_trunc(t);
  const auto last = map_.last_branch();
  long cutoff_eff = cutoff_;
  if (last && *last <= cutoff_) {
    return {trunc, trunc, false};  // finite system, no tail
  }
  switch (map_.family()) {
    case MapFamily::gauss:
    case MapFamily::renyi: {
      // sum_{a>B} a^{-2t}
      const Dual u = t * 2.0;
      if (!tails::power_log_converges(u.v, 0.0)) return {trunc, trunc, true};
      const auto tail = tails::power_log_tail_sum(
          u, Dual(0.0), static_cast<double>(cutoff_eff) + 1.0, 1e-10);
      return {trunc + tail.lo, trunc + tail.hi, false};
    }
    case MapFamily::luroth:
    case MapFamily::manneville_pomeau: {
      // tail of sum a_n^t (for MP scaled by (1-c)^t; branch 0 is in trunc)
      const auto& part = map_.partition();
      Dual factor{1.0, 0.0};
      if (map_.family() == MapFamily::manneville_pomeau) {
        factor = exp(t * std::log(1.0 - map_.mp_c()));
      }
      switch (part.tail().kind) {
        case TailKind::none:
          return {trunc, trunc, false};
        case TailKind::geometric: {
          if (t.v <= 0.0) return {trunc, trunc, true};
          const auto& tl = part.tail();
          const Dual x = exp(t * std::log(tl.ratio));
          const Dual geo = exp(t * std::log(tl.scale)) *
                           exp(t * (static_cast<double>(cutoff_eff) + 1.0) *
                               std::log(tl.ratio)) /
                           (Dual(1.0) - x);
          return {trunc + factor * geo, trunc + factor * geo, false};
        }
        case TailKind::power_log: {
          const auto& tl = part.tail();
          const Dual u = t * tl.p;
          const Dual v = t * tl.q;
          if (!tails::power_log_converges(u.v, v.v)) return {trunc, trunc, true};
          const auto tail = tails::power_log_tail_sum(
              u, v, static_cast<double>(cutoff_eff) + 1.0 + tl.shift, 1e-10);
          const Dual sc = exp(t * std::log(tl.scale));
          return {trunc + factor * sc * tail.lo, trunc + factor * sc * tail.hi,
                  false};
        }
      }
      break;
    }
    default:
      break;
  }
  return {trunc, trunc, false};
}

Dual PartitionEngine::lower_dual(double t) const {
  const double inv_n = 1.0 / static_cast<double>(depth_);
  if (luroth_closed_form_) {
    return log(s_trunc(Dual::var(t))) * Dual(1.0);  // (1/n) * n * log S
  }
  // one-sided bin rounding: weights e^{-tD} under-estimated when D is
  // rounded up (t > 0) or down (t < 0)
  return hist_log_sum(t, /*use_left_edges=*/t < 0.0) * Dual(inv_n);
}

Dual PartitionEngine::upper_dual(double t) const {
  const Dual tv = Dual::var(t);
  const double inv_n = 1.0 / static_cast<double>(depth_);
  const auto sf = s_full(tv);
  if (sf.divergent) return {kInf, 0.0};
  if (luroth_closed_form_) {
    return log(sf.hi);
  }
  const Dual hist = hist_log_sum(t, /*use_left_edges=*/t >= 0.0);
  // words with a symbol beyond the cutoff: S_full^n - S_trunc^n
  const Dual st = s_trunc(tv);
  Dual log_tail{-kInf, 0.0};
  if (sf.hi.v > st.v) {
    const Dual ratio = st / sf.hi;
    Dual pow_ratio{1.0, 0.0};
    for (int k = 0; k < depth_; ++k) pow_ratio *= ratio;
    log_tail = Dual(static_cast<double>(depth_)) * log(sf.hi) +
               log(Dual(1.0) - pow_ratio);
  }
  return dual_log_add_exp(hist, log_tail) * Dual(inv_n);
}

Dual PartitionEngine::mid_dual(double t) const {
  const Dual lo = lower_dual(t);
  const Dual hi = upper_dual(t);
  if (hi.v == kInf) return {kInf, 0.0};
  return Dual(0.5) * (lo + hi);
}

PressureBounds PartitionEngine::bounds(double t) const {
  return {lower_dual(t).v, upper_dual(t).v};
}

double PartitionEngine::width(double t) const {
  const auto b = bounds(t);
  return b.upper - b.lower;
}

PressureBounds partition_sum_bounds(const MRLMap& map, double t, int depth,
                                    long cutoff) {
  PartitionEngine engine(map, depth, cutoff);
  const auto b = engine.bounds(t);
  if (b.upper == kInf) {
    throw DivergentError("partition sums diverge at t=" + std::to_string(t));
  }
  return b;
}

double detect_t_inf(const MRLMap& map) {
  if (map.branch_limit()) return -kInf;
  switch (map.family()) {
    case MapFamily::gauss:
    case MapFamily::renyi:
      return 1.0 / map.mr_constants()->K;
    case MapFamily::luroth:
    case MapFamily::manneville_pomeau: {
      switch (map.partition().tail().kind) {
        case TailKind::none:
          return -kInf;
        case TailKind::geometric:
          return 0.0;
        case TailKind::power_log:
          return 1.0 / map.partition().tail().p;
      }
    }
  }
  return -kInf;
}

ContinuityType classify_type(const MRLMap& map) {
  if (map.branch_limit()) return ContinuityType::continuous;
  switch (map.family()) {
    case MapFamily::gauss:
    case MapFamily::renyi:
      // Markov-Renyi-like maps always have pressure of continuous type
      return ContinuityType::continuous;
    case MapFamily::luroth:
    case MapFamily::manneville_pomeau: {
      const auto& tail = map.partition().tail();
      switch (tail.kind) {
        case TailKind::none:
        case TailKind::geometric:
          return ContinuityType::continuous;
        case TailKind::power_log:
          // sum a_n^t at t = 1/p behaves like sum n^{-1} log^{-q/p} n
          return tail.q / tail.p > 1.0 ? ContinuityType::discontinuous
                                       : ContinuityType::continuous;
      }
    }
  }
  return ContinuityType::continuous;
}

double truncated_pressure(const MRLMap& map, long branches, double t,
                          int depth) {
  if (branches < 1) throw ConfigError("branches must be >= 1");
  if (map.family() == MapFamily::luroth) {
    double sum = 0.0, comp = 0.0;
    long last = branches;
    if (map.last_branch()) last = std::min(last, *map.last_branch());
    for (long a = 1; a <= last; ++a) {
      const double term = std::pow(map.partition().length(a), t);
      const double y = term - comp;
      const double s = sum + y;
      comp = (s - sum) - y;
      sum = s;
    }
    return std::log(sum);
  }
  // exact depth-n periodic sums of the restricted system; monotone in
  // `branches` at fixed depth and t
  double sum = 0.0, comp = 0.0;
  for_each_word_log_deriv(map, depth, branches, [&](double d) {
    const double term = std::exp(-t * d);
    const double y = term - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  });
  return std::log(sum) / static_cast<double>(depth);
}

namespace {

// branches cover [0,1] up to measure zero
bool full_partition(const MRLMap& map) {
  if (map.branch_limit()) return false;
  switch (map.family()) {
    case MapFamily::gauss:
    case MapFamily::renyi:
      return true;
    case MapFamily::luroth:
    case MapFamily::manneville_pomeau:
      return std::abs(map.partition().total() - 1.0) <= 1e-9;
  }
  return false;
}

double bisect_root(const std::function<double(double)>& f, double lo,
                   double hi, double tol) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm) < tol) return mid;
    if ((flo < 0) == (fm < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double PressureCurve::cert_width_at(double t) const {
  if (engine) return engine->width(t);
  if (series) {
    const auto sum = series->symbol_sum(Dual::var(t));
    if (sum.divergent) return 0.0;
    return std::log(sum.bracket.hi.v) - std::log(sum.bracket.lo.v);
  }
  return 0.0;
}

PressureCurve pressure_curve(const MRLMap& map, double t_min, double t_max,
                             int steps, const CurveOptions& opts) {
  if (!(t_min < t_max)) throw ConfigError("pressure_curve needs t_min < t_max");
  if (steps < 2) throw ConfigError("pressure_curve needs steps >= 2");
  PressureCurve curve;
  curve.t_inf = detect_t_inf(map);
  if (!(t_min > curve.t_inf)) {
    throw ConfigError("t_min must exceed the estimated t_inf");
  }
  curve.kind = map.has_parabolic_point() ? SlideKind::parabolic
                                         : SlideKind::non_parabolic;
  curve.ctype = classify_type(map);
  curve.meta.depth = opts.depth;
  curve.meta.cutoff = opts.cutoff;

  std::function<Dual(double)> mid_eval;
  std::function<double(double)> upper_eval;
  if (map.family() == MapFamily::luroth) {
    curve.series = std::make_shared<PartitionSequence>(map.partition());
    auto series = curve.series;
    mid_eval = [series](double t) { return pressure_series_dual(*series, t); };
    upper_eval = [series](double t) {
      const auto sum = series->symbol_sum(Dual::var(t));
      return sum.divergent ? kInf : std::log(sum.bracket.hi.v);
    };
    curve.meta.tail_method = map.partition().finite_branches()
                                 ? "finite"
                                 : (map.partition().tail().kind ==
                                            TailKind::geometric
                                        ? "geometric-closed-form"
                                        : "power-log-integral");
  } else {
    curve.engine =
        std::make_shared<PartitionEngine>(map, opts.depth, opts.cutoff);
    auto engine = curve.engine;
    mid_eval = [engine](double t) { return engine->mid_dual(t); };
    upper_eval = [engine](double t) { return engine->upper_dual(t).v; };
    curve.meta.tail_method = "per-symbol-product";
  }

  // the root / plateau edge
  double d = std::numeric_limits<double>::quiet_NaN();
  const double probe_lo =
      std::isfinite(curve.t_inf)
          ? curve.t_inf + 1e-6 * std::max(1.0, std::abs(curve.t_inf))
          : t_min - 32.0;
  if (curve.kind == SlideKind::non_parabolic) {
    std::function<double(double)> mid_value = [&](double t) {
      return mid_eval(t).v;
    };
    if (opts.richardson_depths) {
      const auto [m, n] = *opts.richardson_depths;
      if (m == n) throw ConfigError("richardson depths must differ");
      PartitionEngine em(map, m, opts.cutoff);
      PartitionEngine en(map, n, opts.cutoff);
      mid_value = [m, n, em = std::make_shared<PartitionEngine>(std::move(em)),
                   en = std::make_shared<PartitionEngine>(std::move(en))](
                      double t) {
        return (n * en->mid_dual(t).v - m * em->mid_dual(t).v) /
               static_cast<double>(n - m);
      };
    }
    // bracket the sign change
    double lo = probe_lo, hi = t_max;
    int guard = 0;
    while (mid_value(hi) > 0.0) {
      hi = hi * 2.0 + 1.0;
      if (++guard > 20) break;
    }
    while (mid_value(lo) < 0.0) {
      lo = std::isfinite(curve.t_inf) ? 0.5 * (lo + curve.t_inf) : lo - 32.0;
      if (++guard > 40) break;
    }
    if (mid_value(lo) > 0.0 && mid_value(hi) < 0.0) {
      d = bisect_root(mid_value, lo, hi, opts.root_tol);
    }
  } else if (full_partition(map)) {
    // Parabolic map whose branches fill [0,1] up to measure zero: the
    // repeller has full Lebesgue measure, so d = Dim_H = 1 exactly. The
    // periodic-point plateau estimate converges too slowly in depth (the
    // depth-n exponent sits ~log Z_n / n above the plateau) to localize d;
    // the certified bracket at d is still reported on the grid.
    d = 1.0;
  } else {
    // restricted parabolic system: plateau infimum, smallest t with
    // P_upper <= plateau_tol
    double hi = t_max;
    int guard = 0;
    while (upper_eval(hi) > opts.plateau_tol) {
      hi = hi * 2.0 + 1.0;
      if (++guard > 12) break;
    }
    if (upper_eval(hi) <= opts.plateau_tol) {
      double lo = probe_lo;
      if (upper_eval(lo) <= opts.plateau_tol) {
        d = lo;  // plateau reaches the whole probed range
      } else {
        for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
          const double mid = 0.5 * (lo + hi);
          (upper_eval(mid) > opts.plateau_tol ? lo : hi) = mid;
        }
        d = 0.5 * (lo + hi);
      }
    }
  }
  curve.d = d;

  // grid rows
  curve.grid.reserve(static_cast<size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double t =
        t_min + (t_max - t_min) * static_cast<double>(i) / (steps - 1);
    PressureCurvePoint pt;
    pt.t = t;
    if (curve.engine) {
      const auto b = curve.engine->bounds(t);
      pt.p_lower = b.lower;
      pt.p_upper = b.upper;
    } else {
      const auto sum = curve.series->symbol_sum(Dual::var(t));
      pt.p_lower = sum.divergent ? kInf : std::log(sum.bracket.lo.v);
      pt.p_upper = sum.divergent ? kInf : std::log(sum.bracket.hi.v);
    }
    const Dual mid = mid_eval(t);
    pt.p_mid = mid.v;
    pt.p_prime = mid.d;
    if (std::isfinite(pt.p_upper)) {
      curve.meta.max_cert_width =
          std::max(curve.meta.max_cert_width, pt.p_upper - pt.p_lower);
    }
    curve.grid.push_back(pt);
  }

  // slide function from the certified midpoint curve
  if (std::isnan(d)) return curve;  // no root found; find_root_d will throw
  SlideSpec spec;
  spec.family = "custom";
  spec.t_inf = curve.t_inf;
  spec.d = d;
  spec.kind = curve.kind;
  spec.t_probe_max = std::max(1e3, 4.0 * t_max);
  if (curve.kind == SlideKind::parabolic) {
    const double bias = mid_eval(d).v;
    spec.eval = [mid_eval, bias](double t) {
      return mid_eval(t) - Dual(bias);
    };
  } else {
    spec.eval = mid_eval;
  }
  SlideBuildOptions bopts;
  bopts.validate = opts.validate_slide;
  bopts.root_tol = 1e-7;
  curve.slide = build_slide(spec, bopts);
  // continuity type from the branch asymptotics is authoritative; for the
  // discontinuous type the corner data is evaluated exactly at t_inf.
  curve.slide.ctype = curve.ctype;
  if (curve.ctype == ContinuityType::discontinuous &&
      std::isfinite(curve.t_inf)) {
    const Dual corner = spec.eval(curve.t_inf);
    curve.slide.limit_at_t_inf = corner.v;
    curve.slide.a_f = corner.d;
  }
  return curve;
}

double find_root_d(const PressureCurve& curve) {
  if (std::isnan(curve.d)) {
    throw NoRootError("pressure curve has no certified root/plateau");
  }
  return curve.d;
}

}  // namespace lyapspec
