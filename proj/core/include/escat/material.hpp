#pragma once

#include <functional>

#include "escat/geometry.hpp"
#include "escat/types.hpp"

namespace escat {

/// Constant isotropic Lame parameters under the strong convexity conditions
/// mu > 0 and n*lambda + 2*mu > 0, with n = 2 throughout.
struct LameParameters {
  LameParameters(Real lambda_, Real mu_) : lambda(lambda_), mu(mu_) {
    require(mu > 0.0, ErrorKind::Parameter, "lame: mu must be positive");
    require(dim * lambda + 2.0 * mu > 0.0, ErrorKind::Parameter,
            "lame: strong convexity requires n*lambda + 2*mu > 0");
  }

  Real lambda;
  Real mu;
  static constexpr int dim = 2;
};

/// Angular frequency with the derived shear/compressional wavenumbers.
struct WaveContext {
  Real omega = 0.0;
  Real kappa_p = 0.0;
  Real kappa_s = 0.0;
};

WaveContext wavenumbers(const LameParameters& params, Real omega);

/// Plane incident wave alpha1 d e^(i kp x.d) + alpha2 d_perp e^(i ks x.d).
struct IncidentWave {
  IncidentWave(Complex alpha1_, Complex alpha2_, const Vec2& d_, const Vec2& d_perp_,
               const WaveContext& context_)
      : alpha1(alpha1_), alpha2(alpha2_), d(d_), d_perp(d_perp_), context(context_) {
    require(std::abs(alpha1) + std::abs(alpha2) > 0.0, ErrorKind::Parameter,
            "incident wave: |alpha1| + |alpha2| must be nonzero");
    require(std::abs(d.norm() - 1.0) < 1e-9 && std::abs(d_perp.norm() - 1.0) < 1e-9,
            ErrorKind::Parameter, "incident wave: d and d_perp must be unit vectors");
    require(std::abs(d.dot(d_perp)) < 1e-9, ErrorKind::Parameter,
            "incident wave: d and d_perp must be orthogonal");
  }

  /// Convenience frame: d at the given angle, d_perp = rot90(d).
  static IncidentWave plane(Complex alpha1, Complex alpha2, Real direction_angle,
                            const WaveContext& context) {
    const Vec2 d(std::cos(direction_angle), std::sin(direction_angle));
    return IncidentWave(alpha1, alpha2, d, rot90(d), context);
  }

  Complex alpha1;
  Complex alpha2;
  Vec2 d;
  Vec2 d_perp;
  WaveContext context;
};

CVec2 incident_field(const IncidentWave& wave, const Vec2& x);

/// Gradient of the incident field: column j holds d(u)/d(x_j).
CMat2 incident_gradient(const IncidentWave& wave, const Vec2& x);

/// Density rho with convex polygonal support: rho == 1 outside the support,
/// Hoelder-continuous inside, with vertex contrast at least contrast_floor.
/// The evaluator form feeds both the solver quadrature and the admissibility
/// checks without committing to a grid.
struct DensityField {
  geometry::ConvexPolygon support;
  std::function<Real(const Vec2&)> profile;  // evaluated only inside the support
  Real holder_exponent = 1.0;                // theta in (0, 1]
  Real holder_norm_bound = 0.0;              // M
  Real contrast_floor = 0.0;                 // eps0 > 0

  Real value_at(const Vec2& x) const { return support.contains(x) ? profile(x) : 1.0; }

  /// Constant rho = 1 + contrast inside the polygon.
  static DensityField constant(geometry::ConvexPolygon polygon, Real contrast);

  /// rho(x) = 1 + contrast + coeff * |x - anchor|^theta inside the polygon.
  static DensityField holder_bump(geometry::ConvexPolygon polygon, Real contrast, Real coeff,
                                  Real theta, const Vec2& anchor);

  /// Spot-checks the Hoelder bound |rho(x)-rho(y)| <= M |x-y|^theta on seeded
  /// point pairs inside the support; returns the worst observed ratio.
  Real holder_ratio_check(std::uint64_t seed, int pairs = 200) const;
};

inline geometry::AdmissibilityReport check_admissible(const DensityField& density,
                                                      const geometry::AdmissibilityBounds& bounds) {
  return geometry::check_admissible(density.support,
                                    [&density](const Vec2& x) { return density.value_at(x); },
                                    bounds);
}

}  // namespace escat
