#include "lyapspec/partition.hpp"

#include <algorithm>
#include <cmath>

#include "lyapspec/errors.hpp"

namespace lyapspec {

namespace {
constexpr long kTailCache = 8192;
}

PartitionSequence::PartitionSequence(std::vector<double> head, TailSpec tail)
    : head_(std::move(head)), tail_(tail) {
  for (double a : head_) {
    if (!(a > 0.0)) throw ConfigError("partition lengths must be positive");
  }
  if (tail_.kind == TailKind::power_log && !(tail_.p > 1.0)) {
    throw ConfigError("power_log tail requires p > 1");
  }
  if (tail_.kind == TailKind::geometric &&
      !(tail_.ratio > 0.0 && tail_.ratio < 1.0)) {
    throw ConfigError("geometric tail requires ratio in (0,1)");
  }
  build_tail_cache();
  if (total() > 1.0 + 1e-12) {
    throw ConfigError("partition lengths sum beyond 1");
  }
}

PartitionSequence PartitionSequence::finite(std::vector<double> lengths) {
  return PartitionSequence(std::move(lengths), TailSpec{});
}

PartitionSequence PartitionSequence::geometric(double ratio) {
  TailSpec tail;
  tail.kind = TailKind::geometric;
  tail.ratio = ratio;
  tail.scale = (1.0 - ratio) / ratio;  // a_n = (1-r) r^{n-1}
  return PartitionSequence({}, tail);
}

PartitionSequence PartitionSequence::power_log_normalized(double p, double q,
                                                          double shift) {
  TailSpec tail;
  tail.kind = TailKind::power_log;
  tail.p = p;
  tail.q = q;
  tail.shift = shift;
  tail.scale = 1.0;
  PartitionSequence raw({}, tail);
  const auto sum = raw.symbol_sum(Dual::var(1.0), 1e-11);
  tail.scale = 1.0 / sum.bracket.mid().v;
  return PartitionSequence({}, tail);
}

std::optional<long> PartitionSequence::branch_count() const {
  if (finite_branches()) return head_count();
  return std::nullopt;
}

double PartitionSequence::length(long n) const {
  if (n < 1) throw DomainError("branch index must be >= 1");
  if (n <= head_count()) return head_[static_cast<size_t>(n - 1)];
  switch (tail_.kind) {
    case TailKind::none:
      throw DomainError("branch index beyond finite partition");
    case TailKind::power_log: {
      const double x = static_cast<double>(n) + tail_.shift;
      return tail_.scale * std::pow(x, -tail_.p) *
             std::pow(std::log(x), -tail_.q);
    }
    case TailKind::geometric:
      return tail_.scale * std::pow(tail_.ratio, static_cast<double>(n));
  }
  return 0.0;
}

double PartitionSequence::analytic_tail_sum(long n) const {
  switch (tail_.kind) {
    case TailKind::none:
      return 0.0;
    case TailKind::geometric:
      // sum_{k>=n} scale r^k = scale r^n / (1-r)
      return tail_.scale * std::pow(tail_.ratio, static_cast<double>(n)) /
             (1.0 - tail_.ratio);
    case TailKind::power_log: {
      const auto br = tails::power_log_tail_sum(
          Dual(tail_.p), Dual(tail_.q), static_cast<double>(n) + tail_.shift,
          1e-9);
      return tail_.scale * br.mid().v;
    }
  }
  return 0.0;
}

void PartitionSequence::build_tail_cache() {
  const long cache = std::max<long>(head_count() + 1, kTailCache);
  tails_cache_.assign(static_cast<size_t>(cache) + 1, 0.0);
  // Backward recursion keeps t_n - t_{n+1} == a_n exactly in floating point,
  // which is what the branch geometry relies on.
  tails_cache_[static_cast<size_t>(cache)] = analytic_tail_sum(cache + 1);
  for (long n = cache; n >= 1; --n) {
    tails_cache_[static_cast<size_t>(n - 1)] =
        tails_cache_[static_cast<size_t>(n)] +
        (n <= head_count() || tail_.kind != TailKind::none ? length(n) : 0.0);
  }
}

double PartitionSequence::tail_sum(long n) const {
  if (n < 1) throw DomainError("tail index must be >= 1");
  const long cache = static_cast<long>(tails_cache_.size()) - 1;
  if (n <= cache + 1) return tails_cache_[static_cast<size_t>(n - 1)];
  if (finite_branches()) return 0.0;
  return analytic_tail_sum(n);
}

long PartitionSequence::index_of_tail(double x) const {
  const long cache = static_cast<long>(tails_cache_.size()) - 1;
  if (x > tails_cache_[0]) throw DomainError("point beyond partition total");
  if (x > tails_cache_[static_cast<size_t>(cache)]) {
    // binary search in the cached tails: find n with t_{n+1} < x <= t_n
    long lo = 1, hi = cache;
    while (lo < hi) {
      const long mid = (lo + hi) / 2;
      if (tails_cache_[static_cast<size_t>(mid)] < x) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return lo;
  }
  if (finite_branches()) throw DomainError("point below partition range");
  // Beyond the cache: invert the analytic tail formula, then fix up locally
  // against the certified tail values. Rare path, only for points within
  // t_{cache+1} of the accumulation point.
  double guess = static_cast<double>(cache + 1);
  if (tail_.kind == TailKind::geometric) {
    guess = std::log(x * (1.0 - tail_.ratio) / tail_.scale) /
            std::log(tail_.ratio);
  } else {
    // t_n ~ scale (n+shift)^{1-p} log^{-q}(n+shift) / (p-1): fixed-point on
    // the log form.
    double y = static_cast<double>(cache + 1) + tail_.shift;
    for (int it = 0; it < 60; ++it) {
      const double target =
          std::log(tail_.scale / ((tail_.p - 1.0) * x)) -
          tail_.q * std::log(std::log(y));
      const double ny = std::exp(target / (tail_.p - 1.0));
      if (std::abs(ny - y) < 0.5) { y = ny; break; }
      y = ny;
      if (!(y > 2.0) || y > 9e15) throw DomainError("point too close to accumulation");
    }
    guess = y - tail_.shift;
  }
  long n = std::max(cache + 1, static_cast<long>(guess) - 4);
  if (analytic_tail_sum(n) < x) throw DomainError("tail inversion failed low");
  for (int it = 0; it < 100000; ++it) {
    if (analytic_tail_sum(n + 1) < x) return n;
    ++n;
  }
  throw DomainError("tail inversion failed");
}

PartitionSequence::SumResult PartitionSequence::symbol_sum(
    Dual t, double rel_width) const {
  SumResult out;
  Dual head{0.0, 0.0};
  for (double a : head_) head += pow(Dual(a), t);

  switch (tail_.kind) {
    case TailKind::none:
      out.bracket = {head, head};
      return out;
    case TailKind::geometric: {
      if (t.v <= 0.0) {
        out.divergent = true;
        out.bracket = {Dual(tails::kInf), Dual(tails::kInf)};
        return out;
      }
      // sum_{n>H} (scale r^n)^t = scale^t x^{H+1} / (1-x), x = r^t, exact.
      const Dual x = pow(Dual(tail_.ratio), t);
      const Dual geo = pow(Dual(tail_.scale), t) *
                       pow(Dual(tail_.ratio), t * Dual(head_count() + 1.0)) /
                       (Dual(1.0) - x);
      out.bracket = {head + geo, head + geo};
      return out;
    }
    case TailKind::power_log: {
      const Dual u = t * tail_.p;
      const Dual v = t * tail_.q;
      if (!tails::power_log_converges(u.v, v.v)) {
        out.divergent = true;
        out.bracket = {Dual(tails::kInf), Dual(tails::kInf)};
        return out;
      }
      const double x0 = static_cast<double>(head_count()) + 1.0 + tail_.shift;
      const auto br = tails::power_log_tail_sum(u, v, x0, rel_width);
      const Dual factor = pow(Dual(tail_.scale), t);
      out.bracket = {head + factor * br.lo, head + factor * br.hi};
      return out;
    }
  }
  return out;
}

}  // namespace lyapspec
