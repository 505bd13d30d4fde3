#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lyapspec/errors.hpp"
#include "lyapspec/slide.hpp"

using namespace lyapspec;

namespace {

const double kLog2 = std::log(2.0);

SlideFunction quadratic_slide() {
  // f(t) = (1-t)^2 on (0,1), 0 beyond: parabolic, discontinuous.
  SlideSpec s;
  s.family = "poly_corner";
  s.t_inf = 0.0;
  s.d = 1.0;
  s.c = 1.0;
  s.gamma = 2.0;
  s.kappa = 0.0;
  return build_slide(s);
}

SlideFunction corner_slide() {
  // f(t) = (1-t)(2-t) = (1-t)^2 + (1-t): parabolic with b_f = -1.
  SlideSpec s;
  s.family = "poly_corner";
  s.t_inf = 0.0;
  s.d = 1.0;
  s.c = 1.0;
  s.gamma = 2.0;
  s.kappa = 1.0;
  return build_slide(s);
}

SlideFunction dyadic_pressure_slide() {
  // f(t) = log(2^{-t} / (1 - 2^{-t})): non-parabolic, continuous, d = 1.
  SlideSpec s;
  s.family = "log_geometric";
  s.q = 2.0;
  s.shift = 0.0;
  return build_slide(s);
}

}  // namespace

TEST_CASE("build_slide classifies the closed-form families") {
  auto quad = quadratic_slide();
  CHECK(quad.kind == SlideKind::parabolic);
  CHECK(quad.ctype == ContinuityType::discontinuous);
  CHECK(quad.limit_at_t_inf == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(quad.a_f == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(std::abs(quad.b_f) < 1e-6);

  auto dy = dyadic_pressure_slide();
  CHECK(dy.kind == SlideKind::non_parabolic);
  CHECK(dy.ctype == ContinuityType::continuous);
  CHECK(dy.d == doctest::Approx(1.0));
  CHECK(dy.a_f == -kInf);
  CHECK(dy.b_f == doctest::Approx(-kLog2).epsilon(1e-9));
  CHECK(dy.limit_at_t_inf == kInf);
}

TEST_CASE("build_slide rejects bad specs") {
  SlideSpec s;
  s.family = "custom";
  s.t_inf = 0.0;
  s.d = 1.0;
  s.kind = SlideKind::non_parabolic;
  s.t_probe_max = 4.0;
  // decreasing but concave: violates the convexity requirement
  s.eval = [](double t) {
    Dual x = Dual::var(t);
    return Dual(1.0) - x * x;
  };
  CHECK_THROWS_AS(build_slide(s), ValidationError);

  SlideSpec bad;
  bad.family = "poly_corner";
  bad.t_inf = 2.0;
  bad.d = 1.0;
  CHECK_THROWS_AS(build_slide(bad), DomainError);
}

TEST_CASE("value_at honours the extended-real contract") {
  auto quad = quadratic_slide();
  CHECK(quad.value_at(-0.5) == kInf);
  CHECK(quad.value_at(1.7) == 0.0);
  CHECK(quad.value_at(0.5) == doctest::Approx(0.25));
  auto dy = dyadic_pressure_slide();
  CHECK(dy.value_at(-0.1) == kInf);
  CHECK(dy.value_at(2.0) == doctest::Approx(std::log(0.25 / 0.75)));
}

TEST_CASE("boundary_slopes on the worked examples") {
  auto quad = quadratic_slide();
  auto [a1, b1] = boundary_slopes(quad);
  CHECK(a1 == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(std::abs(b1) < 1e-6);

  auto corner = corner_slide();
  auto [a2, b2] = boundary_slopes(corner);
  CHECK(a2 == doctest::Approx(-3.0).epsilon(1e-6));
  CHECK(b2 == doctest::Approx(-1.0).epsilon(1e-6));

  auto dy = dyadic_pressure_slide();
  auto [a3, b3] = boundary_slopes(dy);
  CHECK(a3 == -kInf);
  CHECK(b3 == doctest::Approx(-kLog2).epsilon(1e-9));
}

TEST_CASE("newton_map") {
  auto quad = quadratic_slide();
  CHECK(newton_map(quad, 0.5) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK_THROWS_AS(newton_map(quad, 1.5), DerivativeZeroError);
  CHECK_THROWS_AS(newton_map(quad, -0.25), InfiniteValueError);
  // the root is a fixed point
  auto dy = dyadic_pressure_slide();
  CHECK(newton_map(dy, 1.0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("support_line three cases") {
  auto quad = quadratic_slide();
  auto interior = support_line(quad, 1.0);
  CHECK(interior.slope == doctest::Approx(-1.0));
  CHECK(interior.tangency_t == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(interior.intercept == doctest::Approx(0.75).epsilon(1e-9));

  auto corner0 = support_line(quad, 3.0);
  CHECK(corner0.tangency_t == doctest::Approx(0.0));
  CHECK(corner0.intercept == doctest::Approx(1.0).epsilon(1e-6));

  auto corner = corner_slide();
  auto at_d = support_line(corner, 0.5);
  CHECK(at_d.tangency_t == doctest::Approx(1.0));
  CHECK(at_d.intercept == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(support_line(quad, -1.0), NoSupportLineError);
  // continuous type with slope below every tangent: no support line touches
  auto dy = dyadic_pressure_slide();
  CHECK_THROWS_AS(support_line(dy, 0.25), NoSupportLineError);
}

TEST_CASE("support lines dominate the graph") {
  auto check_domination = [](const SlideFunction& f, double alpha) {
    auto line = support_line(f, alpha);
    const double left = std::isfinite(f.t_inf) ? f.t_inf : f.d - 30.0;
    for (int i = 0; i <= 400; ++i) {
      const double t = left + (f.d + 3.0 - left) * i / 400.0;
      const double lv = line.slope * t + line.intercept;
      CHECK(lv <= f.value_at(t) + 1e-9);
    }
  };
  auto quad = quadratic_slide();
  check_domination(quad, 0.7);
  check_domination(quad, 1.9);
  check_domination(quad, 3.5);
  auto corner = corner_slide();
  check_domination(corner, 0.3);
  check_domination(corner, 2.2);
  auto dy = dyadic_pressure_slide();
  check_domination(dy, 1.0);
  check_domination(dy, 2.0 * kLog2);
}

TEST_CASE("s_newton three cases") {
  auto quad = quadratic_slide();
  CHECK(s_newton(quad, 1.0) == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(s_newton(quad, 3.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  auto corner = corner_slide();
  CHECK(s_newton(corner, 0.5) == doctest::Approx(1.0));
  CHECK_THROWS_AS(s_newton(quad, -2.0), NoSupportLineError);
}

TEST_CASE("legendre five cases") {
  auto quad = quadratic_slide();
  CHECK(legendre(quad, 1.0) == doctest::Approx(0.75).epsilon(1e-9));
  auto corner = corner_slide();
  CHECK(legendre(corner, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(legendre(quad, -1.0) == -kInf);
  // discontinuous boundary
  CHECK(legendre(quad, 3.0) == doctest::Approx(1.0).epsilon(1e-6));
  // non-parabolic limit case: dyadic pressure at alpha = -b_f = log 2 has
  // f(t) + t log 2 = -log(1 - 2^{-t}) -> 0
  auto dy = dyadic_pressure_slide();
  CHECK(legendre(dy, kLog2) == doctest::Approx(0.0).epsilon(1e-5));
  CHECK(legendre(dy, 0.5 * kLog2) == -kInf);
}

TEST_CASE("Eq. (3): s_newton equals the Newton map at the tangency point") {
  auto dy = dyadic_pressure_slide();
  for (double alpha : {0.8, 1.0, 1.3862943611198906, 2.0, 3.0}) {
    const double t_alpha = slope_inverse(dy, alpha);
    CHECK(s_newton(dy, alpha) ==
          doctest::Approx(newton_map(dy, t_alpha)).epsilon(1e-9));
  }
  auto quad = quadratic_slide();
  for (double alpha : {0.2, 0.7, 1.2, 1.9}) {
    CHECK(s_newton(quad, alpha) ==
          doctest::Approx(newton_map(quad, slope_inverse(quad, alpha)))
              .epsilon(1e-9));
  }
}

TEST_CASE("monotone slope inversion") {
  auto dy = dyadic_pressure_slide();
  double prev = kInf;
  for (double alpha = 0.75; alpha < 4.0; alpha += 0.25) {
    const double t = slope_inverse(dy, alpha);
    CHECK(t <= prev + 1e-12);
    prev = t;
  }
}

TEST_CASE("legendre is concave in alpha") {
  auto check_concave = [](const SlideFunction& f, double lo, double hi) {
    const int n = 60;
    std::vector<double> F(n + 1);
    const double h = (hi - lo) / n;
    for (int i = 0; i <= n; ++i) F[i] = legendre(f, lo + i * h);
    for (int i = 0; i + 2 <= n; ++i) {
      CHECK(F[i] + F[i + 2] - 2.0 * F[i + 1] <= 1e-7);
    }
  };
  check_concave(quadratic_slide(), 0.2, 4.0);
  check_concave(corner_slide(), 0.2, 4.0);
  check_concave(dyadic_pressure_slide(), 0.75, 4.0);
}

TEST_CASE("Corollary identity F = alpha * Ns over randomized slide functions") {
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int checked = 0;
  for (int iter = 0; iter < 600; ++iter) {
    SlideSpec s;
    double alpha_lo, alpha_hi;
    if (iter % 2 == 0) {
      s.family = "poly_corner";
      s.t_inf = unif(rng) * 2.0;
      s.d = s.t_inf + 0.3 + unif(rng) * 2.0;
      s.c = 0.5 + 4.5 * unif(rng);
      s.gamma = 1.5 + 2.5 * unif(rng);
      s.kappa = (iter % 4 == 1) ? 0.0 : 2.0 * unif(rng);
      alpha_lo = 1e-3;
      alpha_hi = 6.0;
    } else {
      s.family = "log_geometric";
      s.q = 1.5 + 3.0 * unif(rng);
      s.shift = unif(rng) * 2.0;
      alpha_lo = std::log(s.q) * 1.0001;
      alpha_hi = std::log(s.q) * 8.0;
    }
    SlideFunction f = build_slide(s);
    for (int k = 0; k < 2; ++k) {
      const double alpha = alpha_lo + (alpha_hi - alpha_lo) * unif(rng);
      if (classify_support_case(f, alpha) == SupportCase::none) continue;
      const double F = legendre(f, alpha);
      const double Ns = s_newton(f, alpha);
      CHECK(std::abs(F - alpha * Ns) <=
            1e-9 * std::max(1.0, std::abs(F)));
      ++checked;
      if (classify_support_case(f, alpha) == SupportCase::interior) {
        const double t_alpha = slope_inverse(f, alpha);
        CHECK(std::abs(Ns - newton_map(f, t_alpha)) <= 1e-9);
      }
    }
  }
  CHECK(checked >= 1000);
}
