#include "escat/cgo.hpp"

#include <cmath>

#include "escat/quadrature.hpp"

namespace escat::cgo {

CgoParams make_cgo(const Vec2& x0, const Vec2& p, const Vec2& p_perp, Real tau, Real kappa_s) {
  require(kappa_s > 0.0, ErrorKind::Parameter, "make_cgo: kappa_s must be positive");
  require(tau > kappa_s, ErrorKind::Parameter, "make_cgo: requires tau > kappa_s");
  require(std::abs(p.norm() - 1.0) < 1e-9 && std::abs(p_perp.norm() - 1.0) < 1e-9,
          ErrorKind::Parameter, "make_cgo: p and p_perp must be unit vectors");
  require(std::abs(p.dot(p_perp)) < 1e-9, ErrorKind::Parameter,
          "make_cgo: p and p_perp must be orthogonal");
  CgoParams params{x0, p, p_perp, tau, kappa_s, CVec2::Zero(), CVec2::Zero()};
  const Real root = std::sqrt(kappa_s * kappa_s + tau * tau);
  params.xi = tau * p.cast<Complex>() + kImag * root * p_perp.cast<Complex>();
  const Real stretch = std::sqrt(1.0 + kappa_s * kappa_s / (tau * tau));
  params.eta = p_perp.cast<Complex>() - kImag * stretch * p.cast<Complex>();
  return params;
}

CVec2 cgo_field(const CgoParams& params, const Vec2& x) {
  const Complex phase = bdot(params.xi, Vec2(x - params.x0));
  require(phase.real() <= 700.0, ErrorKind::Overflow,
          "cgo_field: exponent exceeds the overflow guard, stay in the decaying half-space");
  return std::exp(phase) * params.eta;
}

CMat2 cgo_gradient(const CgoParams& params, const Vec2& x) {
  const CVec2 u = cgo_field(params, x);
  CMat2 grad;
  grad.col(0) = params.xi.x() * u;
  grad.col(1) = params.xi.y() * u;
  return grad;
}

CVec2 cgo_traction(const CgoParams& params, const Vec2& x, const Vec2& nu,
                   const LameParameters& lame) {
  const Complex phase = bdot(params.xi, Vec2(x - params.x0));
  require(phase.real() <= 700.0, ErrorKind::Overflow, "cgo_traction: exponent overflow guard");
  const Complex xi_nu = bdot(params.xi, nu);
  const Complex eta_nu = bdot(params.eta, nu);
  return lame.mu * std::exp(phase) * (xi_nu * params.eta + eta_nu * params.xi);
}

std::vector<Real> perp_tau_grid(Real kappa_s) {
  // Geometric grid; |u(x0).eta| varies only through sqrt(1 + kappa^2/tau^2),
  // which is monotone in tau, so this resolution certifies the floor.
  constexpr int kPoints = 50;
  std::vector<Real> grid(kPoints);
  const Real lo = 2.0 * kappa_s;
  const Real hi = 1e4 * kappa_s;
  for (int i = 0; i < kPoints; ++i)
    grid[i] = lo * std::pow(hi / lo, static_cast<Real>(i) / (kPoints - 1));
  return grid;
}

namespace {

Real floor_over_grid(const CVec2& u, const Vec2& p, const Vec2& p_perp, Real kappa_s) {
  Real floor = std::numeric_limits<Real>::infinity();
  for (const Real tau : perp_tau_grid(kappa_s)) {
    const auto params = make_cgo(Vec2::Zero(), p, p_perp, tau, kappa_s);
    floor = std::min(floor, std::abs(bdot(u, params.eta)));
  }
  return floor;
}

}  // namespace

PerpChoice choose_p_perp(const CVec2& u_at_x0, const Vec2& p, Real kappa_s) {
  require(u_at_x0.norm() > 0.0, ErrorKind::Parameter, "choose_p_perp: u(x0) must be nonzero");
  require(std::abs(p.norm() - 1.0) < 1e-9, ErrorKind::Parameter,
          "choose_p_perp: p must be a unit vector");

  const Vec2 q = rot90(p);
  const Real floor_plus = floor_over_grid(u_at_x0, p, q, kappa_s);
  const Real floor_minus = floor_over_grid(u_at_x0, p, -q, kappa_s);

  PerpChoice choice;
  choice.p_perp = floor_plus >= floor_minus ? q : Vec2(-q);
  choice.c0_witness = std::max(floor_plus, floor_minus);
  choice.degenerate = choice.c0_witness <= 1e-14 * u_at_x0.norm();

  // Case-analysis bound with the sqrt factor replaced by its infimum 1:
  // Im u.p != 0 -> real part |Re u.p_perp + Im u.p| with matching signs;
  // Im u.p == 0 -> imaginary part |Im u.p_perp - Re u.p| with opposing signs.
  const Vec2 re = u_at_x0.real();
  const Vec2 im = u_at_x0.imag();
  const Real im_p = im.dot(p);
  const Real sign = im_p != 0.0 ? (im_p > 0.0 ? 1.0 : -1.0) : 1.0;
  if (im_p != 0.0) {
    const Vec2 pp = sign * re.dot(q) >= 0.0 ? q : Vec2(-q);
    choice.proof_bound = std::abs(re.dot(pp) + im_p);
  } else {
    const Vec2 pp = -re.dot(p) * im.dot(q) >= 0.0 ? q : Vec2(-q);
    choice.proof_bound = std::abs(im.dot(pp) - re.dot(p));
  }
  return choice;
}

namespace {

// Decay rates z(theta) = xi.w(theta) across the sector, failing loudly when
// the integral diverges.
Complex decay_rate(const CgoParams& params, Real theta) {
  const Vec2 w(std::cos(theta), std::sin(theta));
  const Complex z = bdot(params.xi, w);
  require(z.real() < 0.0, ErrorKind::Divergence,
          "sector integral: decay condition Re(xi.w) < 0 violated inside the sector");
  return z;
}

std::pair<Real, Real> sector_angles(const geometry::Cone2D& cone) {
  const Real mid = std::atan2(cone.bisector.y(), cone.bisector.x());
  return {mid - cone.half_angle, mid + cone.half_angle};
}

}  // namespace

Complex sector_integral(const geometry::Cone2D& cone, const CgoParams& params) {
  const auto [lo, hi] = sector_angles(cone);
  // Endpoint decay checks catch misconfigured cones before quadrature runs.
  decay_rate(params, lo);
  decay_rate(params, hi);
  return quadrature::adaptive(
      [&](Real theta) {
        const Complex z = decay_rate(params, theta);
        return 1.0 / (z * z);
      },
      lo, hi, 1e-12);
}

Complex sector_ball_integral(const geometry::Cone2D& cone, const CgoParams& params, Real h) {
  require(h > 0.0, ErrorKind::Parameter, "sector_ball_integral: h must be positive");
  const auto [lo, hi] = sector_angles(cone);
  decay_rate(params, lo);
  decay_rate(params, hi);
  return quadrature::adaptive(
      [&](Real theta) {
        const Complex z = decay_rate(params, theta);
        const Complex zh = z * h;
        if (std::abs(zh) < 1e-3) {
          // series of (e^(zh)(zh - 1) + 1) / z^2 around zh = 0
          return h * h * (0.5 + zh / 3.0 + zh * zh / 8.0 + zh * zh * zh / 30.0);
        }
        return (std::exp(zh) * (zh - 1.0) + 1.0) / (z * z);
      },
      lo, hi, 1e-12);
}

}  // namespace escat::cgo
