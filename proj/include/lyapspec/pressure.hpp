#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lyapspec/maps.hpp"
#include "lyapspec/slide.hpp"

namespace lyapspec {

struct PressureBounds {
  double lower = 0.0;
  double upper = 0.0;  // +inf when the symbol tail diverges
};

struct SeriesPressure {
  double value = 0.0;  // +inf when the series diverges
  double abserr = 0.0;
};

// log sum_n a_n^t with certified tail handling; divergence is a value.
SeriesPressure pressure_series(const PartitionSequence& seq, double t);
// Same, in dual arithmetic (value and d/dt of the bracket midpoint).
Dual pressure_series_dual(const PartitionSequence& seq, double t);

// Partition-sum estimator for one (map, depth, cutoff): enumerates every
// length-`depth` word over branches <= cutoff, finds its periodic point
// (closed form via Moebius composition for gauss/renyi, affine slopes for
// Lüroth, contraction iteration for Manneville-Pomeau) and accumulates the
// Birkhoff log-derivative D of the orbit into an exact-count histogram.
//
// bounds(t) then brackets the depth-n exponent (1/n) log Z_n(t): the
// histogram is read with one-sided bin rounding (so binning can only widen
// the bracket) and words with a symbol above the cutoff are bounded by the
// per-symbol product rule S_full^n - S_trunc^n with S evaluated from
// analytic branch-derivative infima.
class PartitionEngine {
 public:
  PartitionEngine(MRLMap map, int depth, long cutoff);

  PressureBounds bounds(double t) const;
  Dual lower_dual(double t) const;
  Dual upper_dual(double t) const;  // +inf value when the tail diverges
  Dual mid_dual(double t) const;
  double width(double t) const;

  int depth() const { return depth_; }
  long cutoff() const { return cutoff_; }
  const MRLMap& map() const { return map_; }
  long word_count() const { return words_; }

 private:
  MRLMap map_;
  int depth_;
  long cutoff_;
  bool luroth_closed_form_ = false;
  long words_ = 0;
  double bin_width_ = 0.0;
  std::vector<double> bin_count_;  // exact integer counts
  std::vector<double> log_inf_deriv_;  // log inf_{I_a}|T'| for a <= cutoff

  Dual hist_log_sum(double t, bool use_left_edges) const;
  Dual s_trunc(Dual t) const;
  // bracket of S_full(t) = sum over all branches of exp(-t log inf |T'|);
  // divergent flag when the series does not converge
  struct SFull { Dual lo, hi; bool divergent; };
  SFull s_full(Dual t) const;
  void enumerate();
};

// Enumerates all depth-`depth` words over existing branches <= cutoff and
// hands each word's Birkhoff log-derivative sum D (at the word's periodic
// point) to the sink. Deterministic order.
void for_each_word_log_deriv(const MRLMap& map, int depth, long cutoff,
                             const std::function<void(double)>& sink);

struct PressureCurvePoint {
  double t = 0.0;
  double p_lower = 0.0;
  double p_upper = 0.0;
  double p_mid = 0.0;
  double p_prime = 0.0;
};

struct EstimatorMeta {
  int depth = 0;
  long cutoff = 0;
  std::string tail_method;
  double max_cert_width = 0.0;  // over finite grid entries
};

struct PressureCurve {
  std::vector<PressureCurvePoint> grid;
  double t_inf = 0.0;  // -inf sentinel for finite-branch systems
  double d = 0.0;
  SlideKind kind = SlideKind::non_parabolic;
  ContinuityType ctype = ContinuityType::continuous;
  SlideFunction slide;  // built from the certified midpoint curve
  EstimatorMeta meta;
  std::shared_ptr<const PartitionEngine> engine;       // engine-backed curves
  std::shared_ptr<const PartitionSequence> series;     // series-backed curves

  // certification width (p_upper - p_lower) at arbitrary t
  double cert_width_at(double t) const;
};

struct CurveOptions {
  int depth = 2;
  long cutoff = 2000;
  double plateau_tol = 0.05;   // P_upper level declaring the parabolic plateau
  double root_tol = 1e-10;     // |P| tolerance for the root bisection
  // Root refinement for finite-branch systems: Richardson extrapolation of
  // the depth-n exponents over the given pair of depths.
  std::optional<std::pair<int, int>> richardson_depths;
  bool validate_slide = true;
};

// Certified pressure curve on [t_min, t_max]; Lüroth maps evaluate through
// the symbol series (exact for geometric tails), the other families through
// a PartitionEngine. Classification: kind is parabolic iff the map has a
// parabolic fixed point; continuity type from the branch asymptotics.
PressureCurve pressure_curve(const MRLMap& map, double t_min, double t_max,
                             int steps, const CurveOptions& opts = {});

// Bracket of the depth-n exponent at one t. Throws DivergentError when the
// symbol tail diverges at this t.
PressureBounds partition_sum_bounds(const MRLMap& map, double t, int depth,
                                    long cutoff);

// Root d = Dim_H of the repeller: for non-parabolic curves the bisection
// root of the midpoint curve; for parabolic curves the infimum of the
// detected plateau. Computed at curve build; NoRootError if none was found.
double find_root_d(const PressureCurve& curve);

// Abscissa of convergence: 1/K for Markov-Renyi-like maps, 1/p for power-log
// Lüroth tails, 0 for geometric tails, -inf for finite branch systems.
double detect_t_inf(const MRLMap& map);

ContinuityType classify_type(const MRLMap& map);

// Pressure of the finite sub-system on the first `branches` branches:
// exact log sum for Lüroth, depth-`depth` periodic sums otherwise (exact
// enumeration, monotone in `branches` at fixed depth and t).
double truncated_pressure(const MRLMap& map, long branches, double t,
                          int depth = 3);

}  // namespace lyapspec
