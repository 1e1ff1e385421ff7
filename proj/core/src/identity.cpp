#include "escat/identity.hpp"

#include <cmath>
#include <unordered_map>

#include "escat/quadrature.hpp"

namespace escat::identity {

CVec2 surface_traction(const FieldFn& field, const Vec2& x, const TractionContext& ctx,
                       Real step) {
  require(step > 0.0, ErrorKind::Parameter, "surface_traction: step must be positive");
  const CVec2 dx = (field(x + step * Vec2::UnitX()) - field(x - step * Vec2::UnitX())) / (2.0 * step);
  const CVec2 dy = (field(x + step * Vec2::UnitY()) - field(x - step * Vec2::UnitY())) / (2.0 * step);
  const CVec2 dnu = ctx.normal.x() * dx + ctx.normal.y() * dy;
  const Complex div = dx.x() + dy.y();
  const Complex curl = dy.x() - dx.y();  // d2 u1 - d1 u2
  return 2.0 * ctx.params.mu * dnu + ctx.params.lambda * div * ctx.normal.cast<Complex>() +
         ctx.params.mu * curl * ctx.normal_perp.cast<Complex>();
}

ProbeField probe_from_cgo(const cgo::CgoParams& params, const LameParameters& lame) {
  ProbeField probe;
  probe.value = [params](const Vec2& x) { return cgo::cgo_field(params, x); };
  probe.traction = [params, lame](const Vec2& x, const Vec2& nu) {
    return cgo::cgo_traction(params, x, nu, lame);
  };
  return probe;
}

ProbeField probe_from_plane_wave(const IncidentWave& wave, const LameParameters& lame) {
  ProbeField probe;
  probe.value = [wave](const Vec2& x) { return incident_field(wave, x); };
  probe.traction = [wave, lame](const Vec2& x, const Vec2& nu) {
    const CMat2 grad = incident_gradient(wave, x);
    const CVec2 dnu = grad * nu.cast<Complex>();
    const Complex div = grad(0, 0) + grad(1, 1);
    const Complex curl = grad(0, 1) - grad(1, 0);  // d2 u1 - d1 u2
    return CVec2(2.0 * lame.mu * dnu + lame.lambda * div * nu.cast<Complex>() +
                 lame.mu * curl * rot90(nu).cast<Complex>());
  };
  return probe;
}

namespace {

// Composite trapezoid along a segment; fn sees the point and arclength weight.
void trapezoid_segment(const Vec2& a, const Vec2& b, int nodes,
                       const std::function<void(const Vec2&, Real)>& fn) {
  const Real len = (b - a).norm();
  const Real dt = len / nodes;
  for (int i = 0; i <= nodes; ++i) {
    const Real weight = (i == 0 || i == nodes) ? 0.5 * dt : dt;
    fn(a + (b - a) * (static_cast<Real>(i) / nodes), weight);
  }
}

}  // namespace

IdentityReport betti_identity_check(const geometry::ConvexPolygon& region,
                                    const ScatteringSolution& sol, const ProbeField& probe,
                                    const BettiOptions& options) {
  const WaveContext& ctx = sol.context;
  const Real w2 = ctx.omega * ctx.omega;
  const IncidentWave wave = sol.wave();

  {
    const auto [rlo, rhi] = region.bbox();
    const bool covered = rlo.x() >= sol.grid_lo.x() - 1e-12 && rlo.y() >= sol.grid_lo.y() - 1e-12 &&
                         rhi.x() <= sol.grid_hi.x() + 1e-12 && rhi.y() <= sol.grid_hi.y() + 1e-12;
    require(covered, ErrorKind::Domain, "betti_identity_check: region escapes the solver grid");
  }

  IdentityReport report;
  Complex lhs{0.0, 0.0};
  int cells_used = 0;
  const int n = static_cast<int>(sol.centers.size());
  for (int k = 0; k < n; ++k) {
    if (sol.contrasts[k] == 0.0) continue;
    if (!region.contains(sol.centers[k])) continue;
    lhs += sol.contrasts[k] * sol.weights[k] * bdot(sol.total[k], probe.value(sol.centers[k]));
    ++cells_used;
  }
  lhs *= w2;

  const Real step = options.traction_step_factor * 2.0 * M_PI / ctx.kappa_s;
  const FieldFn w_field = [&](const Vec2& x) {
    return CVec2(incident_field(wave, x) - total_field_at(sol, x));
  };

  Complex rhs{0.0, 0.0};
  for (int e = 0; e < region.size(); ++e) {
    const Vec2 a = region.vertex(e);
    const Vec2 b = region.vertex(e + 1);
    const Vec2 tangent = (b - a).normalized();
    const Vec2 nu = -rot90(tangent);  // outward for counter-clockwise regions
    const TractionContext tctx(sol.params, nu);
    trapezoid_segment(a, b, options.nodes_per_edge, [&](const Vec2& x, Real weight) {
      const CVec2 w_val = w_field(x);
      const CVec2 t_w = surface_traction(w_field, x, tctx, step);
      const CVec2 u0 = probe.value(x);
      const CVec2 t_u0 = probe.traction(x, nu);
      rhs += weight * (bdot(u0, t_w) - bdot(w_val, t_u0));
    });
  }

  report.lhs = lhs;
  report.rhs = rhs;
  report.abs_residual = std::abs(lhs - rhs);
  report.rel_residual =
      report.abs_residual / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  report.quadrature_meta = "cells=" + std::to_string(cells_used) +
                           " nodes_per_edge=" + std::to_string(options.nodes_per_edge);
  return report;
}

namespace {

// Bilinear interpolation of the solved total field over the active-cell
// lattice, with nearest-cell fallback at the support boundary.
class CellInterpolator {
public:
  explicit CellInterpolator(const ScatteringSolution& sol) : sol_(sol) {
    Vec2 lo(std::numeric_limits<Real>::infinity(), std::numeric_limits<Real>::infinity());
    for (const auto& c : sol.centers) lo = lo.cwiseMin(c);
    lo_ = lo;
    const int n = static_cast<int>(sol.centers.size());
    for (int k = 0; k < n; ++k) index_[key_of(lattice(sol.centers[k]))] = k;
  }

  CVec2 operator()(const Vec2& x) const {
    const Vec2 g = (x - lo_) / sol_.cell_size;
    const int i0 = static_cast<int>(std::floor(g.x()));
    const int j0 = static_cast<int>(std::floor(g.y()));
    const Real fx = g.x() - i0;
    const Real fy = g.y() - j0;
    CVec2 acc = CVec2::Zero();
    Real total_weight = 0.0;
    const Real weights[4] = {(1 - fx) * (1 - fy), fx * (1 - fy), (1 - fx) * fy, fx * fy};
    const int offs[4][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    for (int c = 0; c < 4; ++c) {
      const auto it = index_.find(key_of({i0 + offs[c][0], j0 + offs[c][1]}));
      if (it == index_.end()) continue;
      acc += weights[c] * sol_.total[it->second];
      total_weight += weights[c];
    }
    if (total_weight > 1e-12) return acc / total_weight;
    // fall back to the nearest active cell (corner exterior quadrature points)
    int best = 0;
    Real best_dist = std::numeric_limits<Real>::infinity();
    const int n = static_cast<int>(sol_.centers.size());
    for (int k = 0; k < n; ++k) {
      const Real d = (sol_.centers[k] - x).squaredNorm();
      if (d < best_dist) {
        best_dist = d;
        best = k;
      }
    }
    return sol_.total[best];
  }

private:
  std::pair<int, int> lattice(const Vec2& c) const {
    const Vec2 g = (c - lo_) / sol_.cell_size;
    return {static_cast<int>(std::lround(g.x())), static_cast<int>(std::lround(g.y()))};
  }
  static std::int64_t key_of(const std::pair<int, int>& ij) {
    return (static_cast<std::int64_t>(ij.first) << 32) ^ (ij.second & 0xffffffffLL);
  }
  const ScatteringSolution& sol_;
  Vec2 lo_;
  std::unordered_map<std::int64_t, int> index_;
};

}  // namespace

namespace {

// int_0^h e^(z r) g(r) r dr on a mesh graded for the exponential boundary
// layer: unit panels in t = |z| r, with the first panel split for the mild
// r^theta kink of Hoelder densities at the corner.
Complex radial_decay_integral(const Complex& z, Real h,
                              const std::function<Complex(Real)>& g) {
  const Real scale = std::max(std::abs(z), 1.0 / h);
  const Real t_max = std::min(scale * h, 60.0);
  std::vector<Real> knots = {0.0, std::min(0.1, t_max)};
  while (knots.back() < t_max) knots.push_back(std::min(knots.back() + 1.0, t_max));
  Complex sum{0.0, 0.0};
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    sum += quadrature::gauss_panels(
        [&](Real t) {
          const Real r = t / scale;
          return std::exp(z * r) * g(r) * r / scale;
        },
        knots[k], knots[k + 1], 2);
  }
  return sum;
}

}  // namespace

std::vector<CornerTermBreakdown> corner_terms(const DensityField& scatterer,
                                              const ScatteringSolution& sol,
                                              CornerTermConfig& config) {
  const auto& polygon = scatterer.support;
  require(config.h > 0.0 && config.h < 1.0, ErrorKind::Parameter,
          "corner_terms: h must lie in (0, 1)");
  const auto cone = geometry::vertex_cone(polygon, config.vertex_index);
  const auto [p, delta0] = geometry::direction_and_delta0(cone);
  const Vec2 x0 = cone.apex;
  const WaveContext& ctx = sol.context;
  const IncidentWave wave = sol.wave();

  const CVec2 u_x0 = total_field_at(sol, x0);
  if (u_x0.norm() < config.u_floor)
    config.warnings.push_back("total field at the corner is below the configured floor");
  const auto perp = cgo::choose_p_perp(u_x0, p, ctx.kappa_s);
  const Real rho_x0 = scatterer.value_at(x0);
  const Real theta1 = scatterer.holder_exponent;

  const Real mid = std::atan2(cone.bisector.y(), cone.bisector.x());
  const Real theta_lo = mid - cone.half_angle;
  const Real theta_hi = mid + cone.half_angle;

  const CellInterpolator interp(sol);
  const CVec2 u_x0_interp = interp(x0);

  const Real fd_step = 1e-5 * 2.0 * M_PI / ctx.kappa_s;
  const FieldFn w_field = [&](const Vec2& x) {
    return CVec2(incident_field(wave, x) - total_field_at(sol, x));
  };

  // Boundary nodes and the probe-independent field data at them; the field
  // evaluations dominate the cost and are shared by every tau.
  struct BoundaryNode {
    Vec2 x;
    Vec2 nu;
    Real weight = 0.0;
    CVec2 w_val;
    CVec2 t_w;
  };
  std::vector<BoundaryNode> side_nodes, arc_nodes_data;
  {
    // Geometrically graded radial ladder: resolves the e^(-delta0 tau r)
    // boundary layer of every tau in the sweep with one shared node set.
    std::vector<Real> radii = {0.0};
    const int octaves = 18;
    const int per_octave = std::max(4, config.boundary_nodes / 16);
    for (int j = 0; j <= octaves * per_octave; ++j)
      radii.push_back(config.h *
                      std::pow(2.0, -octaves + static_cast<Real>(j) / per_octave));
    for (int side = 0; side < 2; ++side) {
      const Real theta = side == 0 ? theta_lo : theta_hi;
      const Vec2 dir(std::cos(theta), std::sin(theta));
      Vec2 nu = rot90(dir);
      if (nu.dot(cone.bisector) > 0.0) nu = -nu;  // outward from the cone
      const TractionContext tctx(sol.params, nu);
      for (std::size_t k = 0; k < radii.size(); ++k) {
        const Real below = k == 0 ? 0.0 : radii[k] - radii[k - 1];
        const Real above = k + 1 == radii.size() ? 0.0 : radii[k + 1] - radii[k];
        const Vec2 x = x0 + radii[k] * dir;
        BoundaryNode node{x, nu, 0.5 * (below + above), w_field(x),
                          surface_traction(w_field, x, tctx, fd_step)};
        side_nodes.push_back(std::move(node));
      }
    }
  }
  {
    const int arc_count = config.boundary_nodes;
    const Real dtheta = (theta_hi - theta_lo) / arc_count;
    for (int k = 0; k <= arc_count; ++k) {
      const Real theta = theta_lo + k * dtheta;
      const Vec2 nu(std::cos(theta), std::sin(theta));
      const Vec2 x = x0 + config.h * nu;
      const TractionContext tctx(sol.params, nu);
      BoundaryNode node{x, nu, ((k == 0 || k == arc_count) ? 0.5 : 1.0) * dtheta * config.h,
                        w_field(x), surface_traction(w_field, x, tctx, fd_step)};
      arc_nodes_data.push_back(std::move(node));
    }
  }
  Real t1_sup = 0.0, t4_sup = 0.0;
  for (const auto& node : side_nodes)
    t1_sup = std::max({t1_sup, node.t_w.norm(), node.w_val.norm()});
  for (const auto& node : arc_nodes_data)
    t4_sup = std::max(t4_sup, node.w_val.norm() + node.t_w.norm());

  std::vector<CornerTermBreakdown> out;
  for (const Real tau : config.tau_list) {
    if (tau <= ctx.kappa_s) {
      config.warnings.push_back("tau <= kappa_s dropped: " + std::to_string(tau));
      continue;
    }
    const Real root = std::sqrt(ctx.kappa_s * ctx.kappa_s + tau * tau);
    if (root * config.h > 700.0) {
      config.warnings.push_back("tau overflow guard dropped: " + std::to_string(tau));
      continue;
    }
    const auto params = cgo::make_cgo(x0, p, perp.p_perp, tau, ctx.kappa_s);
    const Complex eta_u = bdot(u_x0, params.eta);

    CornerTermBreakdown row;
    row.tau = tau;
    row.h = config.h;

    const Complex full = cgo::sector_integral(cone, params);
    const Complex ball = cgo::sector_ball_integral(cone, params, config.h);
    row.r1 = std::abs((full - ball) * eta_u);
    row.r2 = std::abs(ball * eta_u);

    // R3: Hoelder density remainder rho(x) - rho(x0) over the sector ball.
    row.r3 = std::abs(eta_u) *
             std::abs(quadrature::gauss_panels(
                 [&](Real theta) {
                   const Vec2 w(std::cos(theta), std::sin(theta));
                   const Complex z = bdot(params.xi, w);
                   return radial_decay_integral(z, config.h, [&](Real r) {
                     return Complex(scatterer.value_at(Vec2(x0 + r * w)) - rho_x0, 0.0);
                   });
                 },
                 theta_lo, theta_hi, 16));

    // R4: field remainder u(x) - u(x0) against rho - 1, on interpolated cells.
    if (config.include_r4) {
      const Complex val = quadrature::gauss_panels(
          [&](Real theta) {
            const Vec2 w(std::cos(theta), std::sin(theta));
            const Complex z = bdot(params.xi, w);
            return radial_decay_integral(z, config.h, [&](Real r) {
              const Vec2 x = x0 + r * w;
              const CVec2 u1 = interp(x) - u_x0_interp;
              return Complex((scatterer.value_at(x) - 1.0) * bdot(params.eta, u1));
            });
          },
          theta_lo, theta_hi, 16);
      row.r4 = std::abs(val);
    }

    // Boundary pieces of d(D_h): the two cone sides (I1) and the cap arc (I2).
    Complex i1{0.0, 0.0};
    for (const auto& node : side_nodes) {
      const CVec2 u0 = cgo::cgo_field(params, node.x);
      const CVec2 t_u0 = cgo::cgo_traction(params, node.x, node.nu, sol.params);
      i1 += node.weight * (bdot(u0, node.t_w) - bdot(node.w_val, t_u0));
    }
    row.i1 = std::abs(i1);

    Complex i2{0.0, 0.0};
    for (const auto& node : arc_nodes_data) {
      const CVec2 u0 = cgo::cgo_field(params, node.x);
      const CVec2 t_u0 = cgo::cgo_traction(params, node.x, node.nu, sol.params);
      i2 += node.weight * (bdot(u0, node.t_w) - bdot(node.w_val, t_u0));
    }
    row.i2 = std::abs(i2);

    const Real u_mag = u_x0.norm();
    row.bound_r1 = u_mag * std::pow(tau, -2.0) * std::exp(-delta0 * tau * config.h / 2.0);
    row.bound_r2 = u_mag * std::pow(tau, -2.0);
    row.bound_r3 = u_mag * std::pow(tau, -2.0 - theta1);
    row.bound_r4 = std::pow(tau, -2.0 - config.theta2);
    row.bound_i1 = config.h * t1_sup;
    row.bound_i2 = config.h * std::exp(-delta0 * tau * config.h) * t4_sup;
    out.push_back(row);
  }
  return out;
}

}  // namespace escat::identity
