#pragma once

#include <functional>
#include <vector>

#include "escat/fitting.hpp"
#include "escat/forward.hpp"
#include "escat/material.hpp"
#include "escat/types.hpp"

namespace escat::smallness {

/// Finite Fourier-Bessel sum u(x) = sum_m c_m J_|m|(kappa |x - center|) e^(i m theta),
/// an exact scalar Helmholtz solution used as the three-spheres test corpus.
struct FourierBesselField {
  Real kappa = 0.0;
  Vec2 center = Vec2::Zero();
  std::vector<Complex> coeffs;  // modes m = -K..K, index m + K

  Complex value(const Vec2& x) const;
  int max_mode() const { return (static_cast<int>(coeffs.size()) - 1) / 2; }
};

/// Builds the evaluator; coeffs holds modes m = -K..K (odd length <= 41).
FourierBesselField synth_helmholtz(Real kappa, std::vector<Complex> coeffs, const Vec2& center);

/// Coefficients of the Jacobi-Anger expansion of e^(i kappa x.d) around
/// `center`, truncated at |m| <= max_mode (plumbing for the plane-wave test).
FourierBesselField plane_wave_modes(Real kappa, const Vec2& direction, const Vec2& center,
                                    int max_mode);

using ScalarFn = std::function<Complex(const Vec2&)>;

/// Dense-sampled sup norm over a disk (polar grid, >= 1e4 points by default).
Real ball_sup_norm(const ScalarFn& field, const Vec2& center, Real radius, int radial = 64,
                   int angular = 160);

struct ThreeSpheresCase {
  Vec2 center = Vec2::Zero();
  Real r1 = 0.5, r2 = 1.0, r3 = 2.0;
  Real s = M_SQRT2;  // must lie in (r2, r3)
  Real kappa = 1.0;
  FourierBesselField field;
};

/// Default radii from the fixed choice r1 = r, r2 = 2r, r3 = 4r, s = 2 sqrt2 r.
ThreeSpheresCase default_three_spheres_case(Real r, Real kappa, FourierBesselField field,
                                            const Vec2& center = Vec2::Zero());

struct ThreeSpheresReport {
  bool holds = false;
  Real fitted_beta = 0.0;     // equality solution clamped into (0, 1)
  Real beta_raw = 0.0;        // unclamped equality solution (> 1 when the
                              // inequality is slack for every beta in (0,1))
  Real beta_lo = 0.0;         // bracket log(r3/s)/log(r3/r1) (c = 1 reading)
  Real beta_hi = 0.0;         // bracket 1 - log(s/r1)/log(r3/r1)
  Real sup1 = 0.0, sup2 = 0.0, sup3 = 0.0;
  bool degenerate = false;    // constant-modulus field, inequality trivial
};

/// Checks sup_B2 <= (1 - r2/s)^(-3/2) sup_B3^(1-beta) sup_B1^beta for some
/// beta in (0,1); reports the equality beta and the bracket endpoints.
ThreeSpheresReport three_spheres_check(const ThreeSpheresCase& tcase);

/// Same check for an arbitrary scalar evaluator.
ThreeSpheresReport three_spheres_check(const ScalarFn& field, const Vec2& center, Real r1, Real r2,
                                       Real r3, Real s);

struct BallChain {
  std::vector<Vec2> polyline;
  Real r = 0.0;
  std::vector<Vec2> centers;
  int n_steps = 0;  // N = ceil(arclength / r); centers has N + 1 entries
};

/// Centers spaced at equal arclength <= r along the polyline, endpoints kept.
BallChain build_chain(const std::vector<Vec2>& polyline, Real r);

struct ChainDecayReport {
  std::vector<Real> sup_norms;        // m_k per chain ball
  std::vector<Real> per_step_factors; // geometric decay per step, m_k+1 / m_k
  Real beta = 0.0;                    // exponent used for the decay shape
  Real rhs = 0.0;                        // T * m_1^(beta^(N+1)) with C = 1
  bool shape_holds = false;              // m_N+1 <= rhs
  bool monotone = true;
};

/// Measures sup norms along the chain and checks the multiplicative decay
/// shape m_(N+1) <= T m_1^(beta^(N+1)) for the supplied beta (report-only).
ChainDecayReport chain_decay_experiment(const std::function<Real(const Vec2&)>& magnitude,
                                        const BallChain& chain, Real t_bound, Real beta);

struct FarToNearConfig {
  explicit FarToNearConfig(DensityField base_field) : base(std::move(base_field)) {}

  DensityField base;
  std::vector<Real> contrast_deltas;  // perturbations added to the base contrast
  Real omega = 2.0;
  Real lambda = 1.0, mu = 1.0;
  Complex alpha1{1.0, 0.0}, alpha2{0.0, 0.0};
  Real incident_angle = 0.0;
  int cells_across = 20;
  int directions = 64;
  Real t = 1.25;          // annulus B_2tR minus B_tR
  Real noise_floor = 1e-9;
  int threads = 0;
};

struct FarToNearReport {
  std::vector<Real> epsilons;    // far-field difference norms
  std::vector<Real> near_norms;  // annulus L2 difference norms
  std::vector<bool> excluded;    // below the noise floor
  Real t_bound = 0.0;            // annulus field bound used as the fit's T
  fitting::LineFit sqrtlog_fit;  // ln(near) ~ a - c sqrt(ln(T/eps))
  fitting::LineFit power_fit;    // ln(near) ~ a + g ln(eps)
  Real spearman = 0.0;
};

/// Perturbation-family experiment: far-field difference vs annulus near-field
/// difference, fitted against the e^(-c sqrt(ln(T/eps))) decay shape and a
/// pure power law for comparison.
FarToNearReport far_to_near_experiment(const FarToNearConfig& config);

}  // namespace escat::smallness
