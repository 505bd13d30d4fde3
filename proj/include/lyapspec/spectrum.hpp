#pragma once

#include <vector>

#include "lyapspec/pressure.hpp"

namespace lyapspec {

enum class SpectrumCase { interior, boundary_discontinuous, boundary_parabolic };

struct SpectrumPoint {
  double alpha = 0.0;
  // tangency abscissa; equals t_inf in the discontinuous corner case and d
  // in the parabolic corner case
  double t_alpha = 0.0;
  double F = 0.0;      // Legendre value
  double L = 0.0;      // spectrum value (x-intercept of the support line)
  double L_err = 0.0;  // propagated certification width
  SpectrumCase kase = SpectrumCase::interior;
  bool valid = true;   // false marks out-of-domain grid entries
};

// L(alpha) evaluated along both routes - legendre(slide, alpha)/alpha and
// s_newton(slide, alpha) - asserting their agreement within 1e-8; the
// s_newton value is returned. Guard band of 1e-6 around the dispatch
// boundaries: both formulas are evaluated and the infimum kept.
SpectrumPoint spectrum_point(const PressureCurve& curve, double alpha);

// Grid of spectrum points; out-of-domain entries are flagged, not fatal.
std::vector<SpectrumPoint> spectrum_curve(const PressureCurve& curve,
                                          double alpha_min, double alpha_max,
                                          int steps);

struct DomainDescription {
  double alpha_min = 0.0;      // -b_P (non-parabolic) or 0 (parabolic)
  bool unbounded_above = true;
  // alpha beyond which the dashed corner formula t_inf + lim P / alpha
  // applies (only for discontinuous type with finite corner slope)
  bool has_boundary_segment = false;
  double boundary_alpha = 0.0;  // = -a_P when has_boundary_segment
};

DomainDescription dom_L(const PressureCurve& curve);

// L(0) as the stabilized limit of spectrum_point along alpha = 2^-k;
// requires a parabolic curve (NotParabolicError otherwise).
double spectrum_at_zero(const PressureCurve& curve);

}  // namespace lyapspec
