#pragma once

#include "escat/types.hpp"

namespace escat::specfun {

enum class BesselKind { J, Y };

/// Bessel function of the first (J) or second (Y) kind, orders 0 and 1.
/// J accepts x >= 0; Y requires x > 0.
Real bessel(BesselKind kind, int order, Real x);

inline Real bessel_j0(Real x) { return bessel(BesselKind::J, 0, x); }
inline Real bessel_j1(Real x) { return bessel(BesselKind::J, 1, x); }
inline Real bessel_y0(Real x) { return bessel(BesselKind::Y, 0, x); }
inline Real bessel_y1(Real x) { return bessel(BesselKind::Y, 1, x); }

/// Hankel function of the first kind H^(1)_order(x) = J + i Y, x > 0.
Complex hankel1(int order, Real x);

/// Lower/upper incomplete Gamma pair at (s, x); lower + upper == tgamma(s).
struct IncompleteGammaPair {
  Real s = 0.0;
  Real x = 0.0;
  Real lower = 0.0;  // gamma(s, x) = int_0^x e^-t t^(s-1) dt
  Real upper = 0.0;  // Gamma(s, x) = int_x^inf t^(s-1) e^-t dt
};

IncompleteGammaPair incomplete_gamma(Real s, Real x);

/// Checks gamma(s,x) <= Gamma(s) and Gamma(s,x) <= 2^s Gamma(s) e^(-x/2);
/// slack_* = bound - value (nonnegative when the bound holds).
struct GammaBoundReport {
  bool holds_lower = false;
  bool holds_upper = false;
  Real slack_lower = 0.0;
  Real slack_upper = 0.0;
};

GammaBoundReport gamma_bound_check(Real s, Real x);

}  // namespace escat::specfun
