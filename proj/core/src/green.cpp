#include "escat/green.hpp"

#include <cmath>

#include "escat/specfun.hpp"

namespace escat {

CMat2 green_tensor(const Vec2& x, const Vec2& y, const LameParameters& params,
                   const WaveContext& ctx) {
  const Vec2 diff = x - y;
  const Real r = diff.norm();
  require(r > 0.0, ErrorKind::Singularity, "green_tensor: x == y");

  const Real ks = ctx.kappa_s;
  const Real kp = ctx.kappa_p;
  const Real w2 = ctx.omega * ctx.omega;

  // For g(r) = H0^(1)(k r): g' = -k H1(k r), and g'' + g'/r = -k^2 g away
  // from the origin, so only g'' and g'/r are needed per wavenumber.
  const Complex h0s = specfun::hankel1(0, ks * r);
  const Complex h1s = specfun::hankel1(1, ks * r);
  const Complex h0p = specfun::hankel1(0, kp * r);
  const Complex h1p = specfun::hankel1(1, kp * r);

  const Complex gps = -ks * h1s;  // g_s'
  const Complex gpp = -kp * h1p;  // g_p'
  const Complex gss = -ks * ks * h0s + ks * h1s / r;  // g_s''
  const Complex gsp = -kp * kp * h0p + kp * h1p / r;  // g_p''

  const Vec2 rhat = diff / r;
  const CMat2 outer = (rhat * rhat.transpose()).cast<Complex>();
  const CMat2 eye = CMat2::Identity();

  const Complex radial = gss - gsp;
  const Complex tangential = (gps - gpp) / r;
  const CMat2 hessian = radial * outer + tangential * (eye - outer);

  const Complex quarter_i = kImag * 0.25;
  return quarter_i / params.mu * h0s * eye + quarter_i / w2 * hessian;
}

Complex green_disk_integral(Real a, const LameParameters& params, const WaveContext& ctx) {
  require(a > 0.0, ErrorKind::Parameter, "green_disk_integral: radius must be positive");
  const Real ks = ctx.kappa_s;
  const Real kp = ctx.kappa_p;
  const Real w2 = ctx.omega * ctx.omega;

  // int_0^a H0(k r) r dr = (a/k) H1(k a) + 2i / (pi k^2); the angular average
  // of the Hessian part reduces to the radial Laplacian -k^2 H0.
  auto radial_h0 = [](Real k, Real a_) {
    return a_ / k * specfun::hankel1(1, k * a_) + 2.0 * kImag / (M_PI * k * k);
  };

  const Complex isotropic = kImag * M_PI / (2.0 * params.mu) * radial_h0(ks, a);
  const Complex hessian_part =
      kImag * M_PI / (4.0 * w2) *
      (kp * a * specfun::hankel1(1, kp * a) - ks * a * specfun::hankel1(1, ks * a));
  return isotropic + hessian_part;
}

}  // namespace escat
