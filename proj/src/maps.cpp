#include "lyapspec/maps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "lyapspec/errors.hpp"

namespace lyapspec {

namespace {

// splitmix64; used for counter-based per-orbit seeding.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_from_bits(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double solve_mp_constant(double s) {
  // c + c^{1+s} = 1
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid + std::pow(mid, 1.0 + s) < 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

int worker_count() {
  if (const char* env = std::getenv("LYAPSPEC_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<int>(std::min<long>(v, 256));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

MRLMap::MRLMap(MapFamily fam, PartitionSequence part)
    : family_(fam), partition_(std::move(part)) {}

MRLMap MRLMap::gauss(std::optional<long> branch_limit) {
  MRLMap m(MapFamily::gauss, PartitionSequence::finite({1.0}));
  m.mr_ = MRConstants{2.0, 4.0};
  m.branch_limit_ = branch_limit;
  return m;
}

MRLMap MRLMap::renyi(std::optional<long> branch_limit) {
  MRLMap m(MapFamily::renyi, PartitionSequence::finite({1.0}));
  m.mr_ = MRConstants{2.0, 4.0};
  m.parabolic_ = 0.0;
  m.branch_limit_ = branch_limit;
  return m;
}

MRLMap MRLMap::luroth(PartitionSequence partition) {
  return MRLMap(MapFamily::luroth, std::move(partition));
}

MRLMap MRLMap::manneville_pomeau(double s, PartitionSequence partition) {
  if (!(s >= 0.5 && s <= 1.0)) {
    throw ConfigError("manneville_pomeau requires s in [1/2, 1]");
  }
  MRLMap m(MapFamily::manneville_pomeau, std::move(partition));
  m.parabolic_ = 0.0;
  m.mp_s_ = s;
  m.mp_c_ = solve_mp_constant(s);
  return m;
}

std::optional<long> MRLMap::last_branch() const {
  if (branch_limit_) return branch_limit_;
  if ((family_ == MapFamily::luroth ||
       family_ == MapFamily::manneville_pomeau) &&
      partition_.finite_branches()) {
    return partition_.branch_count();
  }
  return std::nullopt;
}

bool MRLMap::branch_exists(long n) const {
  if (n < first_branch()) return false;
  const auto last = last_branch();
  return !last || n <= *last;
}

Interval MRLMap::branch_interval(long n) const {
  if (!branch_exists(n)) throw DomainError("no such branch");
  switch (family_) {
    case MapFamily::gauss:
      return {1.0 / (n + 1.0), 1.0 / n, false, true};
    case MapFamily::renyi:
      return {(n - 1.0) / n, n / (n + 1.0), true, false};
    case MapFamily::luroth:
      return {partition_.tail_sum(n + 1), partition_.tail_sum(n), false, true};
    case MapFamily::manneville_pomeau: {
      if (n == 0) return {0.0, mp_c_, true, false};
      const double f = 1.0 - mp_c_;
      return {1.0 - f * partition_.tail_sum(n), 1.0 - f * partition_.tail_sum(n + 1),
              true, false};
    }
  }
  throw DomainError("unreachable");
}

long MRLMap::branch_of(double x) const {
  long n = 0;
  switch (family_) {
    case MapFamily::gauss: {
      if (!(x > 0.0 && x <= 1.0)) throw DomainError("gauss domain is (0,1]");
      n = static_cast<long>(std::floor(1.0 / x));
      break;
    }
    case MapFamily::renyi: {
      if (!(x >= 0.0 && x < 1.0)) throw DomainError("renyi domain is [0,1)");
      n = static_cast<long>(std::floor(1.0 / (1.0 - x)));
      break;
    }
    case MapFamily::luroth: {
      if (!(x > 0.0 && x <= partition_.total())) {
        throw DomainError("luroth point outside (0, total]");
      }
      n = partition_.index_of_tail(x);
      break;
    }
    case MapFamily::manneville_pomeau: {
      if (!(x >= 0.0 && x < 1.0)) throw DomainError("mp domain is [0,1)");
      if (x < mp_c_) return 0;
      // x in [1 - f t_n, 1 - f t_{n+1})  <=>  t_{n+1} < (1-x)/f' <= t_n except
      // at the closed left endpoint; resolve via index_of_tail and adjust.
      const double f = 1.0 - mp_c_;
      const double y = (1.0 - x) / f;
      if (y <= 0.0) throw DomainError("mp point beyond branch closure");
      n = partition_.index_of_tail(y);
      break;
    }
  }
  if (!branch_exists(n)) throw DomainError("point outside restricted branches");
  return n;
}

double MRLMap::apply_on_branch(long n, double x) const {
  switch (family_) {
    case MapFamily::gauss:
      return 1.0 / x - static_cast<double>(n);
    case MapFamily::renyi:
      return 1.0 / (1.0 - x) - static_cast<double>(n);
    case MapFamily::luroth:
      return (partition_.tail_sum(n) - x) / partition_.length(n);
    case MapFamily::manneville_pomeau: {
      if (n == 0) return x + std::pow(x, 1.0 + mp_s_);
      const double f = 1.0 - mp_c_;
      return (f * partition_.tail_sum(n) + x - 1.0) / (f * partition_.length(n));
    }
  }
  throw DomainError("unreachable");
}

double MRLMap::apply(double x) const { return apply_on_branch(branch_of(x), x); }

double MRLMap::log_deriv_on_branch(long n, double x) const {
  switch (family_) {
    case MapFamily::gauss:
      return -2.0 * std::log(x);
    case MapFamily::renyi:
      return -2.0 * std::log(1.0 - x);
    case MapFamily::luroth:
      return -std::log(partition_.length(n));
    case MapFamily::manneville_pomeau: {
      if (n == 0) return std::log1p((1.0 + mp_s_) * std::pow(x, mp_s_));
      return -std::log((1.0 - mp_c_) * partition_.length(n));
    }
  }
  throw DomainError("unreachable");
}

double MRLMap::log_deriv(double x) const {
  return log_deriv_on_branch(branch_of(x), x);
}

double MRLMap::inverse_branch(long n, double y) const {
  if (!branch_exists(n)) throw DomainError("no such branch");
  if (!(y >= 0.0 && y <= 1.0)) throw DomainError("inverse_branch wants y in [0,1]");
  switch (family_) {
    case MapFamily::gauss:
      return 1.0 / (static_cast<double>(n) + y);
    case MapFamily::renyi:
      return 1.0 - 1.0 / (static_cast<double>(n) + y);
    case MapFamily::luroth:
      return partition_.tail_sum(n) - partition_.length(n) * y;
    case MapFamily::manneville_pomeau: {
      const double f = 1.0 - mp_c_;
      if (n > 0) return 1.0 - f * partition_.tail_sum(n) + f * partition_.length(n) * y;
      // Solve x + x^{1+s} = y on [0, c] (increasing); Newton with bisection
      // safeguard.
      double lo = 0.0, hi = mp_c_, x = y * mp_c_;
      for (int it = 0; it < 200; ++it) {
        const double g = x + std::pow(x, 1.0 + mp_s_) - y;
        if (g > 0.0) hi = x; else lo = x;
        const double dg = 1.0 + (1.0 + mp_s_) * std::pow(x, mp_s_);
        double nx = x - g / dg;
        if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
        if (std::abs(nx - x) < 1e-17 + 1e-16 * x) { x = nx; break; }
        x = nx;
      }
      return x;
    }
  }
  throw DomainError("unreachable");
}

Interval cylinder_interval(const MRLMap& map, const CylinderWord& w) {
  if (w.symbols.empty()) throw DomainError("empty cylinder word");
  for (long s : w.symbols) {
    if (!map.branch_exists(s)) throw DomainError("word uses missing branch");
  }
  double a = 0.0, b = 1.0;
  for (auto it = w.symbols.rbegin(); it != w.symbols.rend(); ++it) {
    const double na = map.inverse_branch(*it, a);
    const double nb = map.inverse_branch(*it, b);
    a = std::min(na, nb);
    b = std::max(na, nb);
  }
  if (!(b - a > 1e-300)) throw DegenerateError("cylinder width underflow");
  const Interval base = map.branch_interval(w.symbols.front());
  return {a, b, base.closed_lo, base.closed_hi};
}

double periodic_point(const MRLMap& map, const CylinderWord& w) {
  if (w.symbols.empty()) throw DomainError("empty cylinder word");
  const long n = w.depth();
  auto h = [&](double y) {
    for (auto it = w.symbols.rbegin(); it != w.symbols.rend(); ++it) {
      y = map.inverse_branch(*it, y);
    }
    return y;
  };
  double x = 0.5;
  for (long it = 0; it < 10000; ++it) {
    const double nx = h(x);
    const double residual = std::abs(nx - x);
    x = nx;
    if (residual < 1e-15) break;
  }
  // forward residual check along the word's branches
  double y = x;
  for (long k = 0; k < n; ++k) y = map.apply_on_branch(w.symbols[static_cast<size_t>(k)], y);
  if (!(std::abs(y - x) < 1e-12)) {
    throw ConvergenceError("periodic point iteration did not converge (parabolic word?)");
  }
  return x;
}

double birkhoff_log_deriv(const MRLMap& map, double x, long n) {
  double sum = 0.0;
  for (long k = 0; k < n; ++k) {
    long branch;
    try {
      branch = map.branch_of(x);
    } catch (const DomainError&) {
      throw DomainError("orbit left the domain at step " + std::to_string(k));
    }
    sum += map.log_deriv_on_branch(branch, x);
    x = map.apply_on_branch(branch, x);
  }
  return sum;
}

McResult lyapunov_mc(const MRLMap& map, long orbits, long steps,
                     std::uint64_t seed) {
  if (orbits < 1 || steps < 1) throw ConfigError("orbits and steps must be >= 1");
  std::vector<double> lambda(static_cast<size_t>(orbits), 0.0);
  std::vector<long> resampled(static_cast<size_t>(orbits), 0);

  auto run_orbit = [&](long i) {
    const std::uint64_t base = mix64(seed ^ mix64(static_cast<std::uint64_t>(i)));
    std::uint64_t counter = 0;
    auto next_unit = [&]() { return unit_from_bits(mix64(base + ++counter)); };
    // Orbit points that land on an excluded endpoint (or leave the domain
    // through rounding) are resampled in place and counted. For Lüroth maps
    // this is exact: Lebesgue measure is invariant, so a freshly drawn
    // uniform point continues the Birkhoff average without bias. It also
    // matters in practice: dyadic partitions act exactly on doubles and
    // absorb every orbit into x = 0 after ~50 steps.
    double x = next_unit();
    double sum = 0.0;
    long tries = 0;
    long k = 0;
    while (k < steps) {
      long branch;
      try {
        branch = map.branch_of(x);
      } catch (const DomainError&) {
        x = next_unit();
        ++tries;
        continue;
      }
      sum += map.log_deriv_on_branch(branch, x);
      x = map.apply_on_branch(branch, x);
      ++k;
    }
    lambda[static_cast<size_t>(i)] = sum / static_cast<double>(steps);
    resampled[static_cast<size_t>(i)] = tries;
  };

  const int workers = std::min<long>(worker_count(), orbits);
  if (workers <= 1) {
    for (long i = 0; i < orbits; ++i) run_orbit(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int wi = 0; wi < workers; ++wi) {
      pool.emplace_back([&, wi]() {
        for (long i = wi; i < orbits; i += workers) run_orbit(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Reduce in orbit order: results are independent of the worker count.
  double mean = 0.0;
  for (double v : lambda) mean += v;
  mean /= static_cast<double>(orbits);
  double var = 0.0;
  for (double v : lambda) var += (v - mean) * (v - mean);
  var /= std::max<double>(1.0, static_cast<double>(orbits - 1));
  McResult out;
  out.mean = mean;
  out.stderr_of_mean = std::sqrt(var / static_cast<double>(orbits));
  for (long r : resampled) out.resampled_orbits += r;
  return out;
}

std::string MRLMap::describe() const {
  switch (family_) {
    case MapFamily::gauss:
      return branch_limit_ ? "gauss[1.." + std::to_string(*branch_limit_) + "]"
                           : "gauss";
    case MapFamily::renyi:
      return branch_limit_ ? "renyi[1.." + std::to_string(*branch_limit_) + "]"
                           : "renyi";
    case MapFamily::luroth:
      return "luroth";
    case MapFamily::manneville_pomeau:
      return "manneville_pomeau(s=" + std::to_string(mp_s_) + ")";
  }
  return "?";
}

}  // namespace lyapspec
