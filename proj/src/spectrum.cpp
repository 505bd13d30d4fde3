#include "lyapspec/spectrum.hpp"

#include <cmath>

#include "lyapspec/errors.hpp"

namespace lyapspec {

namespace {

constexpr double kGuardBand = 1e-6;

struct CaseValue {
  double F = 0.0;
  double Ns = 0.0;
  double t_alpha = 0.0;
  SpectrumCase kase = SpectrumCase::interior;
};

CaseValue eval_interior(const SlideFunction& f, double alpha) {
  const double t = slope_inverse(f, alpha);
  const double v = f.value_at(t);
  return {v + alpha * t, t + v / alpha, t, SpectrumCase::interior};
}

CaseValue eval_boundary_disc(const SlideFunction& f, double alpha) {
  return {f.limit_at_t_inf + alpha * f.t_inf,
          f.t_inf + f.limit_at_t_inf / alpha, f.t_inf,
          SpectrumCase::boundary_discontinuous};
}

CaseValue eval_boundary_par(const SlideFunction& f, double alpha) {
  return {alpha * f.d, f.d, f.d, SpectrumCase::boundary_parabolic};
}

}  // namespace

SpectrumPoint spectrum_point(const PressureCurve& curve, double alpha) {
  if (alpha == 0.0) {
    throw ZeroAlphaError("alpha = 0 is handled by spectrum_at_zero");
  }
  const SlideFunction& f = curve.slide;
  const double ma = -alpha;

  CaseValue cv;
  const SupportCase kase = classify_support_case(f, alpha);
  switch (kase) {
    case SupportCase::interior:
      cv = eval_interior(f, alpha);
      break;
    case SupportCase::boundary_discontinuous:
      cv = eval_boundary_disc(f, alpha);
      break;
    case SupportCase::boundary_parabolic:
      cv = eval_boundary_par(f, alpha);
      break;
    case SupportCase::none:
      throw OutOfDomainError("alpha outside Dom(L)");
  }

  // Guard band: the dispatch boundaries meet continuously, so near them both
  // formulas are evaluated and the infimum kept.
  if (std::isfinite(f.a_f) && std::abs(ma - f.a_f) <= kGuardBand &&
      f.ctype == ContinuityType::discontinuous) {
    const CaseValue alt = eval_boundary_disc(f, alpha);
    if (alt.F < cv.F) cv = alt;
  }
  if (std::abs(ma - f.b_f) <= kGuardBand && f.kind == SlideKind::parabolic &&
      ma < 0.0) {
    const CaseValue alt = eval_boundary_par(f, alpha);
    if (alt.F < cv.F) cv = alt;
  }

  // two-route consistency: F(alpha) = alpha * Ns(alpha)
  const double route_gap = std::abs(cv.F / alpha - cv.Ns);
  if (!(route_gap <= 1e-8 * std::max(1.0, std::abs(cv.Ns)))) {
    throw ConvergenceError("legendre/alpha and s_newton disagree by " +
                           std::to_string(route_gap));
  }

  SpectrumPoint pt;
  pt.alpha = alpha;
  pt.t_alpha = cv.t_alpha;
  pt.F = cv.F;
  pt.L = cv.Ns;
  pt.kase = cv.kase;
  pt.L_err = curve.cert_width_at(cv.t_alpha) / std::abs(alpha) + 1e-12;
  return pt;
}

std::vector<SpectrumPoint> spectrum_curve(const PressureCurve& curve,
                                          double alpha_min, double alpha_max,
                                          int steps) {
  if (!(alpha_min < alpha_max) || steps < 2) {
    throw ConfigError("spectrum_curve needs alpha_min < alpha_max, steps >= 2");
  }
  std::vector<SpectrumPoint> out;
  out.reserve(static_cast<size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double alpha =
        alpha_min + (alpha_max - alpha_min) * static_cast<double>(i) / (steps - 1);
    try {
      out.push_back(spectrum_point(curve, alpha));
    } catch (const OutOfDomainError&) {
      SpectrumPoint pt;
      pt.alpha = alpha;
      pt.valid = false;
      out.push_back(pt);
    } catch (const ZeroAlphaError&) {
      SpectrumPoint pt;
      pt.alpha = alpha;
      pt.valid = false;
      out.push_back(pt);
    }
  }
  return out;
}

DomainDescription dom_L(const PressureCurve& curve) {
  DomainDescription dom;
  const SlideFunction& f = curve.slide;
  dom.alpha_min = curve.kind == SlideKind::parabolic ? 0.0 : -f.b_f;
  dom.unbounded_above = true;
  if (f.ctype == ContinuityType::discontinuous && std::isfinite(f.a_f)) {
    dom.has_boundary_segment = true;
    dom.boundary_alpha = -f.a_f;
  }
  return dom;
}

double spectrum_at_zero(const PressureCurve& curve) {
  if (curve.kind != SlideKind::parabolic) {
    throw NotParabolicError("spectrum_at_zero requires a parabolic curve");
  }
  double prev = std::numeric_limits<double>::quiet_NaN();
  double last = prev;
  for (int k = 1; k <= 20; ++k) {
    const double alpha = std::pow(2.0, -k);
    const double L = spectrum_point(curve, alpha).L;
    prev = last;
    last = L;
  }
  if (!(std::abs(last - prev) <= 1e-9 * std::max(1.0, std::abs(last)))) {
    throw ConvergenceError("spectrum_at_zero did not stabilize");
  }
  return last;
}

}  // namespace lyapspec
