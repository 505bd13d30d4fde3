#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lyapspec/partition.hpp"

namespace lyapspec {

enum class MapFamily { gauss, renyi, luroth, manneville_pomeau };

struct MRConstants {
  double K = 2.0;  // derivative order: C^{-1} n^K <= |T'| <= C n^K on I_n
  double C = 4.0;
};

struct Interval {
  double lo = 0.0, hi = 0.0;
  bool closed_lo = false, closed_hi = false;
  double width() const { return hi - lo; }
  bool contains(double x) const {
    return (x > lo || (closed_lo && x == lo)) &&
           (x < hi || (closed_hi && x == hi));
  }
};

// One of the four concrete countable Markov interval map families, with an
// optional restriction to the first `branch_limit` branches (finite
// sub-system). Immutable after construction; every operation is pure.
class MRLMap {
 public:
  static MRLMap gauss(std::optional<long> branch_limit = {});
  static MRLMap renyi(std::optional<long> branch_limit = {});
  static MRLMap luroth(PartitionSequence partition);
  // Infinite Manneville-Pomeau: parabolic branch x + x^{1+s} on [0, c) with
  // c + c^{1+s} = 1, and linear branches over the partition of [c, 1) scaled
  // from `partition` by (1 - c).
  static MRLMap manneville_pomeau(double s, PartitionSequence partition);

  MapFamily family() const { return family_; }
  const std::optional<MRConstants>& mr_constants() const { return mr_; }
  std::optional<double> parabolic_point() const { return parabolic_; }
  std::optional<long> branch_limit() const { return branch_limit_; }
  const PartitionSequence& partition() const { return partition_; }
  double mp_s() const { return mp_s_; }
  double mp_c() const { return mp_c_; }
  bool has_parabolic_point() const { return parabolic_.has_value(); }
  long first_branch() const {
    return family_ == MapFamily::manneville_pomeau ? 0 : 1;
  }
  // Largest branch index, or nullopt when countably infinite.
  std::optional<long> last_branch() const;
  bool branch_exists(long n) const;

  double apply(double x) const;      // T(x)
  double log_deriv(double x) const;  // log |T'(x)|
  long branch_of(double x) const;
  Interval branch_interval(long n) const;
  // Unique x in I_n with T(x) = y (closed form except the MP parabolic
  // branch, which is solved by safeguarded Newton iteration).
  double inverse_branch(long n, double y) const;
  // T restricted to branch n (no membership check on x).
  double apply_on_branch(long n, double x) const;
  double log_deriv_on_branch(long n, double x) const;
  // log inf_{I_n} |T'|, used by partition-sum tail bounds.
  double branch_log_deriv_inf(long n) const;

  std::string describe() const;

 private:
  MRLMap(MapFamily fam, PartitionSequence part);
  MapFamily family_;
  PartitionSequence partition_;
  std::optional<MRConstants> mr_;
  std::optional<double> parabolic_;
  std::optional<long> branch_limit_;
  double mp_s_ = 0.0, mp_c_ = 0.0;
};

struct CylinderWord {
  std::vector<long> symbols;  // branch indices, depth = symbols.size()
  long depth() const { return static_cast<long>(symbols.size()); }
};

// Interval of points whose first `depth` branch symbols match the word,
// computed by composing inverse branches applied to [0, 1].
Interval cylinder_interval(const MRLMap& map, const CylinderWord& w);

// Unique x in the cylinder with T^{|w|} x = x; residual below 1e-12 or
// ConvergenceError (e.g. for a purely parabolic word).
double periodic_point(const MRLMap& map, const CylinderWord& w);

// sum_{k<n} log |T'(T^k x)|.
double birkhoff_log_deriv(const MRLMap& map, double x, long n);

struct McResult {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  long resampled_orbits = 0;
};

// Monte-Carlo Lyapunov exponent: averages birkhoff_log_deriv/steps over
// uniformly sampled initial points. Deterministic for a given seed and
// independent of the worker count (per-orbit counter-based seeding).
McResult lyapunov_mc(const MRLMap& map, long orbits, long steps,
                     std::uint64_t seed);

// Worker count for parallel loops: LYAPSPEC_THREADS if set, else hardware.
int worker_count();

}  // namespace lyapspec
