#pragma once

// Test-only reference implementations, deliberately independent of the
// library code paths they are used to check.

#include <functional>

#include "escat/cgo.hpp"
#include "escat/forward.hpp"
#include "escat/geometry.hpp"
#include "escat/material.hpp"
#include "escat/types.hpp"

namespace oracles {

using escat::CVec2;
using escat::Complex;
using escat::Real;
using escat::Vec2;

/// Plain power-series J0/J1 evaluated with `terms` terms (brute-force
/// reference for small arguments; 50 terms cover x <= ~15 comfortably).
Real series_j0(Real x, int terms = 50);
Real series_j1(Real x, int terms = 50);

/// Bisection root of a callable on [lo, hi].
Real bisect(const std::function<Real(Real)>& fn, Real lo, Real hi, int iterations = 200);

/// Brute-force 2D tensor-product Gauss quadrature of e^(xi.(x - x0)) over the
/// truncated sector of radius `radius` (no radial closed form involved).
Complex sector_quadrature_2d(const escat::geometry::Cone2D& cone,
                             const escat::cgo::CgoParams& params, Real radius,
                             int radial_panels = 240, int angular_panels = 48);

/// First Born approximation of the scattered field at x: direct quadrature of
/// w^2 G(x,y) (rho-1) u^i(y) over the solver cells of `grid`.
CVec2 born_scattered(const escat::DensityField& scatterer, const escat::IncidentWave& wave,
                     const escat::LameParameters& params, const escat::SolverGrid& grid,
                     const Vec2& x);

/// Independent brute-force minimum of |u . eta(tau)| over the documented
/// 50-point geometric tau grid on [2 kappa_s, 1e4 kappa_s].
Real tau_grid_min(const CVec2& u, const Vec2& p, const Vec2& p_perp, Real kappa_s);

}  // namespace oracles
