#include "escat/specfun.hpp"

#include <cmath>

namespace escat::specfun {

Real bessel(BesselKind kind, int order, Real x) {
  require(order == 0 || order == 1, ErrorKind::Parameter,
          "bessel: only orders 0 and 1 are supported");
  if (kind == BesselKind::J) {
    require(x >= 0.0, ErrorKind::Domain, "bessel: J requires x >= 0");
    return std::cyl_bessel_j(static_cast<Real>(order), x);
  }
  require(x > 0.0, ErrorKind::Domain, "bessel: Y requires x > 0");
  return std::cyl_neumann(static_cast<Real>(order), x);
}

Complex hankel1(int order, Real x) {
  require(x > 0.0, ErrorKind::Domain, "hankel1: requires x > 0");
  return {bessel(BesselKind::J, order, x), bessel(BesselKind::Y, order, x)};
}

namespace {

// Lower regularized series: gamma(s,x) = x^s e^-x sum_k x^k / (s (s+1) ... (s+k)).
Real lower_series(Real s, Real x) {
  Real term = 1.0 / s;
  Real sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= x / (s + k);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) break;
  }
  return std::exp(-x + s * std::log(x)) * sum;
}

// Upper via modified Lentz continued fraction (stable for x >= s + 1).
Real upper_cf(Real s, Real x) {
  const Real tiny = 1e-300;
  Real b = x + 1.0 - s;
  Real c = 1.0 / tiny;
  Real d = 1.0 / b;
  Real h = d;
  for (int i = 1; i < 500; ++i) {
    const Real an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const Real delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + s * std::log(x)) * h;
}

}  // namespace

IncompleteGammaPair incomplete_gamma(Real s, Real x) {
  require(s > 0.0, ErrorKind::Parameter, "incomplete_gamma: requires s > 0");
  require(x >= 0.0, ErrorKind::Parameter, "incomplete_gamma: requires x >= 0");
  const Real total = std::tgamma(s);
  IncompleteGammaPair pair{s, x, 0.0, total};
  if (x == 0.0) return pair;
  if (x < s + 1.0) {
    pair.lower = lower_series(s, x);
    pair.upper = total - pair.lower;
  } else {
    pair.upper = upper_cf(s, x);
    pair.lower = total - pair.upper;
  }
  // Clamp the roundoff-negative tail that appears when one part dominates.
  if (pair.lower < 0.0) pair.lower = 0.0;
  if (pair.upper < 0.0) pair.upper = 0.0;
  return pair;
}

GammaBoundReport gamma_bound_check(Real s, Real x) {
  const auto pair = incomplete_gamma(s, x);
  const Real total = std::tgamma(s);
  GammaBoundReport report;
  report.slack_lower = total - pair.lower;
  report.holds_lower = report.slack_lower >= -1e-12 * total;
  const Real upper_bound = std::pow(2.0, s) * total * std::exp(-x / 2.0);
  report.slack_upper = upper_bound - pair.upper;
  report.holds_upper = report.slack_upper >= -1e-12 * upper_bound;
  return report;
}

}  // namespace escat::specfun
