#include "escat/fields.hpp"

#include <cmath>

namespace escat {

namespace {

struct Stencil {
  CVec2 u, uxx, uyy, uxy;
};

// values[j][i] is the 3x3 neighbourhood (i,j offsets in {-1,0,1}), step h.
Stencil stencil_from(const CVec2 values[3][3], Real h) {
  Stencil s;
  const Real h2 = h * h;
  s.u = values[1][1];
  s.uxx = (values[1][2] - 2.0 * values[1][1] + values[1][0]) / h2;
  s.uyy = (values[2][1] - 2.0 * values[1][1] + values[0][1]) / h2;
  s.uxy = (values[2][2] - values[2][0] - values[0][2] + values[0][0]) / (4.0 * h2);
  return s;
}

struct NodeResidual {
  Real abs = 0.0;
  Real rel = 0.0;
};

NodeResidual node_residual(const Stencil& s, Real rho, const WaveContext& ctx,
                           const LameParameters& params) {
  const Real mu = params.mu;
  const Real lm = params.lambda + params.mu;
  const CVec2 lap = s.uxx + s.uyy;
  const CVec2 grad_div(s.uxx.x() + s.uxy.y(), s.uxy.x() + s.uyy.y());
  const CVec2 residual = mu * lap + lm * grad_div + rho * ctx.omega * ctx.omega * s.u;

  // Denominator: magnitudes of the individual operator terms before they
  // cancel, so the relative figure measures the achieved cancellation.
  const Real scale = mu * (s.uxx.norm() + s.uyy.norm()) +
                     std::abs(lm) * (std::abs(s.uxx.x()) + std::abs(s.uxy.y()) +
                                     std::abs(s.uxy.x()) + std::abs(s.uyy.y())) +
                     std::abs(rho) * ctx.omega * ctx.omega * s.u.norm();
  NodeResidual out;
  out.abs = residual.norm();
  out.rel = out.abs / std::max(scale, 1e-300);
  return out;
}

}  // namespace

Real VectorField2::max_abs() const {
  Real best = 0.0;
  for (const auto& v : data) best = std::max(best, v.norm());
  return best;
}

VectorField2 VectorField2::sample(const std::function<CVec2(const Vec2&)>& fn, const Vec2& origin,
                                  Real h, int nx, int ny) {
  require(nx >= 1 && ny >= 1 && h > 0.0, ErrorKind::Parameter, "field sample: bad grid shape");
  VectorField2 f{origin, h, nx, ny, {}};
  f.data.resize(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) f.at(i, j) = fn(f.node(i, j));
  return f;
}

ResidualReport navier_residual_report(const VectorField2& field,
                                      const std::function<Real(const Vec2&)>& rho,
                                      const WaveContext& ctx, const LameParameters& params) {
  require(field.nx >= 3 && field.ny >= 3, ErrorKind::Dimension,
          "navier_residual: grid too small for the interior stencil");
  ResidualReport report;
  for (int j = 1; j < field.ny - 1; ++j) {
    for (int i = 1; i < field.nx - 1; ++i) {
      CVec2 values[3][3];
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) values[dj + 1][di + 1] = field.at(i + di, j + dj);
      const auto nr =
          node_residual(stencil_from(values, field.h), rho(field.node(i, j)), ctx, params);
      report.max_abs = std::max(report.max_abs, nr.abs);
      report.max_rel = std::max(report.max_rel, nr.rel);
    }
  }
  return report;
}

Real navier_residual(const VectorField2& field, const std::function<Real(const Vec2&)>& rho,
                     const WaveContext& ctx, const LameParameters& params) {
  return navier_residual_report(field, rho, ctx, params).max_abs;
}

ResidualReport navier_residual_at(const std::function<CVec2(const Vec2&)>& field, const Vec2& x,
                                  Real step, Real rho_at_x, const WaveContext& ctx,
                                  const LameParameters& params) {
  require(step > 0.0, ErrorKind::Parameter, "navier_residual_at: step must be positive");
  CVec2 values[3][3];
  for (int dj = -1; dj <= 1; ++dj)
    for (int di = -1; di <= 1; ++di) values[dj + 1][di + 1] = field(x + step * Vec2(di, dj));
  const auto nr = node_residual(stencil_from(values, step), rho_at_x, ctx, params);
  return {nr.abs, nr.rel};
}

HelmholtzSplit helmholtz_split(const VectorField2& field, const WaveContext& ctx) {
  require(field.nx >= 3 && field.ny >= 3, ErrorKind::Dimension,
          "helmholtz_split: grid too small for second derivatives");
  const int nx = field.nx - 2;
  const int ny = field.ny - 2;
  VectorField2 up{field.origin + Vec2(field.h, field.h), field.h, nx, ny, {}};
  up.data.resize(static_cast<std::size_t>(nx) * ny);
  VectorField2 us = up;
  const Real inv_kp2 = 1.0 / (ctx.kappa_p * ctx.kappa_p);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      CVec2 values[3][3];
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) values[dj + 1][di + 1] = field.at(i + 1 + di, j + 1 + dj);
      const auto s = stencil_from(values, field.h);
      const CVec2 grad_div(s.uxx.x() + s.uxy.y(), s.uxy.x() + s.uyy.y());
      up.at(i, j) = -inv_kp2 * grad_div;
      us.at(i, j) = s.u - up.at(i, j);
    }
  }
  return {std::move(up), std::move(us)};
}

namespace {

Real max_first_derivative_combo(const VectorField2& field, bool divergence) {
  require(field.nx >= 3 && field.ny >= 3, ErrorKind::Dimension,
          "first-derivative check: grid too small");
  Real best = 0.0;
  const Real inv2h = 1.0 / (2.0 * field.h);
  for (int j = 1; j < field.ny - 1; ++j) {
    for (int i = 1; i < field.nx - 1; ++i) {
      const CVec2 dx = (field.at(i + 1, j) - field.at(i - 1, j)) * inv2h;
      const CVec2 dy = (field.at(i, j + 1) - field.at(i, j - 1)) * inv2h;
      const Complex v = divergence ? dx.x() + dy.y() : dx.y() - dy.x();
      best = std::max(best, std::abs(v));
    }
  }
  return best;
}

}  // namespace

Real max_divergence(const VectorField2& field) { return max_first_derivative_combo(field, true); }

Real max_curl(const VectorField2& field) { return max_first_derivative_combo(field, false); }

}  // namespace escat
