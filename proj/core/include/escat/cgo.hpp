#pragma once

#include "escat/geometry.hpp"
#include "escat/material.hpp"
#include "escat/types.hpp"

namespace escat::cgo {

/// Complex geometrical optics frame at apex x0:
///   xi  = tau p + i sqrt(kappa_s^2 + tau^2) p_perp,
///   eta = p_perp - i sqrt(1 + kappa_s^2 / tau^2) p,
/// with tau > kappa_s and (p, p_perp) an orthonormal pair. The probe field
/// e^(xi.(x - x0)) eta solves the homogeneous Navier equation: xi.xi = -kappa_s^2
/// makes the Laplacian term cancel and xi.eta = 0 kills the grad-div term.
struct CgoParams {
  Vec2 x0;
  Vec2 p;
  Vec2 p_perp;
  Real tau = 0.0;
  Real kappa_s = 0.0;
  CVec2 xi;
  CVec2 eta;
};

CgoParams make_cgo(const Vec2& x0, const Vec2& p, const Vec2& p_perp, Real tau, Real kappa_s);

/// u0(x) = e^(xi.(x - x0)) eta. Throws when Re(xi.(x - x0)) > 700 (the caller
/// must stay in the decaying half-space).
CVec2 cgo_field(const CgoParams& params, const Vec2& x);

/// Gradient of the probe field: column j holds d(u0)/d(x_j).
CMat2 cgo_gradient(const CgoParams& params, const Vec2& x);

/// Closed-form surface traction of the probe field on a surface with outward
/// unit normal nu: mu e^(xi.(x-x0)) [(xi.nu) eta + (eta.nu) xi].
CVec2 cgo_traction(const CgoParams& params, const Vec2& x, const Vec2& nu,
                   const LameParameters& lame);

struct PerpChoice {
  Vec2 p_perp;
  Real c0_witness = 0.0;   // min over the tau grid of |u(x0).eta(tau)|
  Real proof_bound = 0.0;  // tau-independent case-analysis lower bound
  bool degenerate = false;  // both sign choices floored at zero
};

/// Selects p_perp in {+rot90(p), -rot90(p)} so the tau-uniform floor of
/// |u(x0).eta(tau)| is maximal; the floor is certified over a 50-point
/// geometric tau grid on [2 kappa_s, 1e4 kappa_s].
PerpChoice choose_p_perp(const CVec2& u_at_x0, const Vec2& p, Real kappa_s);

/// The tau grid used by the p_perp floor certification.
std::vector<Real> perp_tau_grid(Real kappa_s);

/// Exact value of the full-sector integral int_A e^(xi.(x-x0)) dx via the
/// radial reduction int (xi.w(theta))^-2 dtheta. Requires the decay condition
/// Re(xi.w(theta)) < 0 across the sector.
Complex sector_integral(const geometry::Cone2D& cone, const CgoParams& params);

/// Same integral truncated to the sector portion of the ball B_h(x0).
Complex sector_ball_integral(const geometry::Cone2D& cone, const CgoParams& params, Real h);

}  // namespace escat::cgo
