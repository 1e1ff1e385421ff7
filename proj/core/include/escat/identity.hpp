#pragma once

#include <functional>
#include <vector>

#include "escat/cgo.hpp"
#include "escat/forward.hpp"
#include "escat/geometry.hpp"
#include "escat/material.hpp"
#include "escat/types.hpp"

namespace escat::identity {

/// Frame for the 2D surface traction (conormal derivative)
///   T_nu(u) = 2 mu d_nu(u) + lambda nu (div u) + mu (d2 u1 - d1 u2) nu_perp,
/// with nu_perp the +90 degree rotation of nu.
struct TractionContext {
  LameParameters params;
  Vec2 normal;       // unit outward normal
  Vec2 normal_perp;  // rot90(normal)

  TractionContext(const LameParameters& params_, const Vec2& normal_)
      : params(params_), normal(normal_), normal_perp(rot90(normal_)) {
    require(std::abs(normal.norm() - 1.0) < 1e-9, ErrorKind::Parameter,
            "traction: normal must be a unit vector");
  }
};

using FieldFn = std::function<CVec2(const Vec2&)>;

/// Centered-difference surface traction of an evaluable field at x.
/// Default step: 1e-5 of the shear wavelength implied by `context`.
CVec2 surface_traction(const FieldFn& field, const Vec2& x, const TractionContext& ctx, Real step);

/// Homogeneous-background probe with analytic value and traction (CGO probes
/// and plane waves both fit; the Betti residual tests swap them freely).
struct ProbeField {
  FieldFn value;
  std::function<CVec2(const Vec2&, const Vec2&)> traction;  // (x, outward normal)
};

ProbeField probe_from_cgo(const cgo::CgoParams& params, const LameParameters& lame);
ProbeField probe_from_plane_wave(const IncidentWave& wave, const LameParameters& lame);

struct IdentityReport {
  Complex lhs;             // volume side  w^2 int_S (rho - 1) u . u0
  Complex rhs;             // boundary side int_dS u0.T(u^i - u) - (u^i - u).T(u0)
  Real abs_residual = 0.0;
  Real rel_residual = 0.0;
  std::string quadrature_meta;
};

struct BettiOptions {
  int nodes_per_edge = 256;
  Real traction_step_factor = 1e-5;  // of the shear wavelength
};

/// Numerically evaluates both sides of the Betti volume-boundary identity on
/// a polygonal region S covered by the solver grid. The volume side uses the
/// solver's own cell quadrature; the boundary side uses composite trapezoid
/// nodes with finite-difference tractions of the scattered part.
IdentityReport betti_identity_check(const geometry::ConvexPolygon& region,
                                    const ScatteringSolution& solution, const ProbeField& probe,
                                    const BettiOptions& options = {});

struct CornerTermBreakdown {
  Real tau = 0.0;
  Real h = 0.0;
  Real r1 = 0.0, r2 = 0.0, r3 = 0.0, r4 = 0.0;
  Real i1 = 0.0, i2 = 0.0;
  // reference bound shapes with every constant set to 1
  Real bound_r1 = 0.0, bound_r2 = 0.0, bound_r3 = 0.0, bound_r4 = 0.0;
  Real bound_i1 = 0.0, bound_i2 = 0.0;
};

struct CornerTermConfig {
  int vertex_index = 0;
  Real h = 0.25;                 // corner ball radius, in (0, 1)
  std::vector<Real> tau_list;
  Real theta2 = 0.5;             // reported Hoelder exponent of the field remainder
  bool include_r4 = true;        // the u1 remainder needs interior field interpolation
  int boundary_nodes = 64;       // per cone side and per arc
  Real u_floor = 1e-3;           // warn when |u(x0)| drops below this (the
                                 // nonvanishing hypothesis is reported, not certified)
  std::vector<std::string> warnings;  // filled when tau values get dropped
};

/// Direct quadrature of the corner-estimate terms R1..R4 (volume) and I1, I2
/// (boundary) for each tau, next to the reference bound shapes.
/// Overflow-prone tau values are dropped with a warning in the config echo.
std::vector<CornerTermBreakdown> corner_terms(const DensityField& scatterer,
                                              const ScatteringSolution& solution,
                                              CornerTermConfig& config);

}  // namespace escat::identity
