#include "escat/material.hpp"

#include <cmath>

namespace escat {

WaveContext wavenumbers(const LameParameters& params, Real omega) {
  require(omega > 0.0, ErrorKind::Parameter, "wavenumbers: omega must be positive");
  WaveContext ctx;
  ctx.omega = omega;
  ctx.kappa_s = omega * std::sqrt(1.0 / params.mu);
  ctx.kappa_p = omega * std::sqrt(1.0 / (params.lambda + 2.0 * params.mu));
  return ctx;
}

CVec2 incident_field(const IncidentWave& wave, const Vec2& x) {
  const Complex phase_p = std::exp(kImag * wave.context.kappa_p * x.dot(wave.d));
  const Complex phase_s = std::exp(kImag * wave.context.kappa_s * x.dot(wave.d));
  return wave.alpha1 * phase_p * wave.d.cast<Complex>() +
         wave.alpha2 * phase_s * wave.d_perp.cast<Complex>();
}

CMat2 incident_gradient(const IncidentWave& wave, const Vec2& x) {
  const Complex phase_p = std::exp(kImag * wave.context.kappa_p * x.dot(wave.d));
  const Complex phase_s = std::exp(kImag * wave.context.kappa_s * x.dot(wave.d));
  CMat2 grad = CMat2::Zero();
  for (int j = 0; j < 2; ++j) {
    const Complex dp = kImag * wave.context.kappa_p * wave.d[j] * phase_p * wave.alpha1;
    const Complex ds = kImag * wave.context.kappa_s * wave.d[j] * phase_s * wave.alpha2;
    grad.col(j) = dp * wave.d.cast<Complex>() + ds * wave.d_perp.cast<Complex>();
  }
  return grad;
}

DensityField DensityField::constant(geometry::ConvexPolygon polygon, Real contrast) {
  DensityField field{std::move(polygon), [contrast](const Vec2&) { return 1.0 + contrast; },
                     1.0, 0.0, std::abs(contrast)};
  return field;
}

DensityField DensityField::holder_bump(geometry::ConvexPolygon polygon, Real contrast, Real coeff,
                                       Real theta, const Vec2& anchor) {
  require(theta > 0.0 && theta <= 1.0, ErrorKind::Parameter,
          "holder_bump: theta must lie in (0, 1]");
  DensityField field{std::move(polygon),
                     [contrast, coeff, theta, anchor](const Vec2& x) {
                       return 1.0 + contrast + coeff * std::pow((x - anchor).norm(), theta);
                     },
                     theta, std::abs(coeff), std::abs(contrast)};
  return field;
}

Real DensityField::holder_ratio_check(std::uint64_t seed, int pairs) const {
  Rng rng(seed);
  const auto [lo, hi] = support.bbox();
  auto sample_inside = [&]() {
    for (int tries = 0; tries < 10000; ++tries) {
      const Vec2 x(rng.uniform(lo.x(), hi.x()), rng.uniform(lo.y(), hi.y()));
      if (support.contains(x)) return x;
    }
    fail(ErrorKind::Geometry, "holder_ratio_check: could not sample inside support");
  };
  Real worst = 0.0;
  for (int k = 0; k < pairs; ++k) {
    const Vec2 x = sample_inside();
    const Vec2 y = sample_inside();
    const Real dist = (x - y).norm();
    if (dist < 1e-12) continue;
    const Real ratio = std::abs(value_at(x) - value_at(y)) / std::pow(dist, holder_exponent);
    worst = std::max(worst, ratio);
  }
  return worst;
}

}  // namespace escat
