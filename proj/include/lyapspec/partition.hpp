#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lyapspec/dual.hpp"
#include "lyapspec/tails.hpp"

namespace lyapspec {

enum class TailKind { none, power_log, geometric };

// Analytic tail description for an interval partition. Beyond the explicit
// head, lengths follow
//   power_log:  a_n = scale * (n + shift)^{-p} * log^{-q}(n + shift)
//   geometric:  a_n = scale * ratio^n
struct TailSpec {
  TailKind kind = TailKind::none;
  double p = 0.0;
  double q = 0.0;
  double scale = 1.0;
  double shift = 0.0;
  double ratio = 0.0;
};

// Lengths a_1, a_2, ... of a countable interval partition, explicit head plus
// analytic tail. Immutable after construction.
class PartitionSequence {
 public:
  PartitionSequence(std::vector<double> head, TailSpec tail);

  static PartitionSequence finite(std::vector<double> lengths);
  // a_n = (1 - ratio) ratio^{n-1}, so the lengths sum to one. dyadic() is
  // ratio = 1/2, i.e. a_n = 2^{-n}.
  static PartitionSequence geometric(double ratio);
  static PartitionSequence dyadic() { return geometric(0.5); }
  // a_n proportional to (n+shift)^{-p} log^{-q}(n+shift), normalized to sum 1.
  static PartitionSequence power_log_normalized(double p, double q,
                                                double shift);

  bool finite_branches() const { return tail_.kind == TailKind::none; }
  const TailSpec& tail() const { return tail_; }
  long head_count() const { return static_cast<long>(head_.size()); }

  // Largest branch index, or nullopt for infinitely many branches.
  std::optional<long> branch_count() const;

  double length(long n) const;    // a_n, n >= 1
  double tail_sum(long n) const;  // t_n = sum_{k>=n} a_k
  double total() const { return tail_sum(1); }

  // Smallest n with tail_sum(n+1) < x, i.e. the branch whose interval
  // (t_{n+1}, t_n] contains x when intervals accumulate at 0.
  long index_of_tail(double x) const;

  struct SumResult {
    tails::DualBracket bracket;
    bool divergent = false;
  };

  // Certified bracket for sum_n a_n^t, evaluated in dual arithmetic so the
  // derivative d/dt comes along exactly. Divergence is reported as a value.
  SumResult symbol_sum(Dual t, double rel_width = 1e-10) const;

 private:
  std::vector<double> head_;  // a_1 .. a_H
  TailSpec tail_;
  std::vector<double> tails_cache_;  // t_1 .. t_{cache size}
  void build_tail_cache();
  double analytic_tail_sum(long n) const;  // sum_{k>=n} a_k for n > head
};

}  // namespace lyapspec
