#pragma once

#include <string>
#include <vector>

#include "escat/green.hpp"
#include "escat/material.hpp"
#include "escat/types.hpp"

namespace escat {

/// One square collocation cell of the volume-integral grid.
struct SolverCell {
  Vec2 center = Vec2::Zero();
  Vec2 centroid = Vec2::Zero();  // centroid of the polygon-clipped region
  Real weight = 0.0;             // polygon-clipped area of the cell
  bool inside = false;           // polygon membership of the cell center
};

/// Uniform cell tiling of a bounding box around the scatterer support.
/// Cells overlapping the support (weight > 0) carry the unknowns; partially
/// covered cells keep their clipped-area weight so corners are not
/// staircased away.
struct SolverGrid {
  Vec2 lo = Vec2::Zero();
  Vec2 hi = Vec2::Zero();
  Real cell_size = 0.0;
  int nx = 0;
  int ny = 0;
  std::vector<SolverCell> cells;    // all nx*ny cells, row-major
  std::vector<int> active;          // indices of cells with positive weight
  std::vector<std::string> warnings;

  static SolverGrid build(const DensityField& scatterer, const WaveContext& context,
                          int cells_across, Real margin = 0.0);

  /// Same tiling but on an explicit box (family sweeps share one lattice so
  /// member-to-member differences are free of regridding noise).
  static SolverGrid build_in_box(const DensityField& scatterer, const WaveContext& context,
                                 const Vec2& lo, const Vec2& hi, int cells_across);
};

struct SolveOptions {
  int threads = 0;  // 0 = hardware concurrency
};

/// Discrete total field on the active cells plus everything needed to
/// evaluate the scattered field and far-field pattern afterwards.
struct ScatteringSolution {
  LameParameters params{0.0, 1.0};
  WaveContext context;
  Complex alpha1, alpha2;
  Vec2 d = Vec2::UnitX(), d_perp = Vec2::UnitY();
  std::vector<Vec2> support_vertices;  // scatterer polygon, for domain checks
  std::vector<Vec2> centers;           // active cell centers
  std::vector<Real> weights;
  std::vector<Real> contrasts;
  std::vector<CVec2> total;  // total field per active cell
  Real cell_size = 0.0;
  Vec2 grid_lo = Vec2::Zero();  // coverage box of the originating grid
  Vec2 grid_hi = Vec2::Zero();
  Real residual_norm = 0.0;  // relative linear-solve residual

  IncidentWave wave() const { return IncidentWave(alpha1, alpha2, d, d_perp, context); }
};

/// Solves the Lippmann-Schwinger equation
///   u(x) = u^i(x) + w^2 int_Omega G(x,y) (rho(y) - 1) u(y) dy
/// by midpoint collocation on the active cells, with the singular self-cell
/// integral replaced by the exact equal-area disk value. Dense LU with one
/// step of iterative refinement.
ScatteringSolution solve(const DensityField& scatterer, const IncidentWave& wave,
                         const LameParameters& params, const SolverGrid& grid,
                         const SolveOptions& options = {});

/// u^s(x) for x strictly outside the support polygon.
CVec2 scattered_near_field(const ScatteringSolution& solution, const Vec2& x);

/// Total field u(x) = u^i(x) + u^s(x) anywhere. Points within a cell size of
/// a collocation node see the quadrature's local error; prefer cell values
/// when x is a node.
CVec2 total_field_at(const ScatteringSolution& solution, const Vec2& x);

/// Sampled far-field pattern on M uniform directions of the unit circle.
struct FarFieldPattern {
  std::vector<Real> angles;
  std::vector<CVec2> u_p;  // longitudinal (radial) amplitudes
  std::vector<CVec2> u_s;  // transversal (tangential) amplitudes
};

/// Far-field amplitudes normalized by the extrapolation contract
///   |x|^(1/2) e^(-i kappa_a |x|) u^s_a(|x| xhat) -> U_a(xhat).
FarFieldPattern far_field(const ScatteringSolution& solution, int directions);

/// Discrete L2(S^1) product norm sqrt(sum (|U_p|^2 + |U_s|^2) dtheta).
Real far_field_norm(const FarFieldPattern& pattern);

/// Difference norm of two patterns sampled on identical direction sets.
Real far_field_distance(const FarFieldPattern& a, const FarFieldPattern& b);

/// JSON snapshot round trip (binary-free, reproducible).
std::string solution_to_json(const ScatteringSolution& solution);
ScatteringSolution solution_from_json(const std::string& text);

}  // namespace escat
