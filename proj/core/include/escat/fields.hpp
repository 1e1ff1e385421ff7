#pragma once

#include <functional>
#include <vector>

#include "escat/material.hpp"
#include "escat/types.hpp"

namespace escat {

/// Complex 2-vector field sampled on a uniform node grid.
struct VectorField2 {
  Vec2 origin = Vec2::Zero();
  Real h = 0.0;
  int nx = 0;
  int ny = 0;
  std::vector<CVec2> data;

  const CVec2& at(int i, int j) const { return data[static_cast<std::size_t>(j) * nx + i]; }
  CVec2& at(int i, int j) { return data[static_cast<std::size_t>(j) * nx + i]; }
  Vec2 node(int i, int j) const { return origin + h * Vec2(i, j); }
  Real max_abs() const;

  static VectorField2 sample(const std::function<CVec2(const Vec2&)>& fn, const Vec2& origin,
                             Real h, int nx, int ny);
};

struct ResidualReport {
  Real max_abs = 0.0;  // max over nodes of |Delta* u + rho omega^2 u|
  Real max_rel = 0.0;  // max over nodes of residual / local operator-term magnitude
};

/// Second-order centered-difference Navier residual over interior grid nodes.
ResidualReport navier_residual_report(const VectorField2& field,
                                      const std::function<Real(const Vec2&)>& rho,
                                      const WaveContext& context, const LameParameters& params);

Real navier_residual(const VectorField2& field, const std::function<Real(const Vec2&)>& rho,
                     const WaveContext& context, const LameParameters& params);

inline Real navier_residual(const VectorField2& field, const DensityField& density,
                            const WaveContext& context, const LameParameters& params) {
  return navier_residual(field, [&density](const Vec2& x) { return density.value_at(x); },
                         context, params);
}

/// Pointwise residual of a callable field via a local 3x3 stencil of step h.
ResidualReport navier_residual_at(const std::function<CVec2(const Vec2&)>& field, const Vec2& x,
                                  Real step, Real rho_at_x, const WaveContext& context,
                                  const LameParameters& params);

struct HelmholtzSplit {
  VectorField2 u_p;  // curl-free part, -kappa_p^-2 grad(div u)
  VectorField2 u_s;  // divergence-free remainder u - u_p
};

/// Splits a Navier solution sample into compressional/shear parts on the
/// one-ring-shrunk interior grid.
HelmholtzSplit helmholtz_split(const VectorField2& field, const WaveContext& context);

/// Max | d1 u1 + d2 u2 | over interior nodes (centered differences).
Real max_divergence(const VectorField2& field);
/// Max | d1 u2 - d2 u1 | over interior nodes (centered differences).
Real max_curl(const VectorField2& field);

}  // namespace escat
