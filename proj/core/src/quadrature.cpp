#include "escat/quadrature.hpp"

#include <array>
#include <cmath>

namespace escat::quadrature {

namespace {

Complex simpson(const Complex& fa, const Complex& fm, const Complex& fb, Real a, Real b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

Complex adaptive_step(const std::function<Complex(Real)>& fn, Real a, Real b, const Complex& fa,
                      const Complex& fm, const Complex& fb, const Complex& whole, Real tol,
                      int depth) {
  const Real m = 0.5 * (a + b);
  const Complex fl = fn(0.5 * (a + m));
  const Complex fr = fn(0.5 * (m + b));
  const Complex left = simpson(fa, fl, fm, a, m);
  const Complex right = simpson(fm, fr, fb, m, b);
  const Complex refined = left + right;
  if (depth <= 0 || std::abs(refined - whole) < 15.0 * tol) {
    return refined + (refined - whole) / 15.0;
  }
  return adaptive_step(fn, a, m, fa, fl, fm, left, 0.5 * tol, depth - 1) +
         adaptive_step(fn, m, b, fm, fr, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

Complex adaptive(const std::function<Complex(Real)>& fn, Real a, Real b, Real rel_tol,
                 int max_depth) {
  require(b >= a, ErrorKind::Parameter, "adaptive quadrature: b must be >= a");
  if (a == b) return {0.0, 0.0};
  const Complex fa = fn(a);
  const Complex fm = fn(0.5 * (a + b));
  const Complex fb = fn(b);
  const Complex whole = simpson(fa, fm, fb, a, b);
  const Real tol = std::max(std::abs(whole) * rel_tol, 1e-300);
  return adaptive_step(fn, a, b, fa, fm, fb, whole, tol, max_depth);
}

Complex gauss_panels(const std::function<Complex(Real)>& fn, Real a, Real b, int panels) {
  require(panels >= 1, ErrorKind::Parameter, "gauss_panels: needs at least one panel");
  // 8-point Gauss-Legendre nodes/weights on [-1, 1].
  static const std::array<Real, 8> nodes = {
      -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
      0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
  static const std::array<Real, 8> weights = {
      0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
      0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
  Complex sum{0.0, 0.0};
  const Real dx = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const Real lo = a + p * dx;
    const Real mid = lo + 0.5 * dx;
    for (int k = 0; k < 8; ++k) sum += weights[k] * fn(mid + 0.5 * dx * nodes[k]);
  }
  return 0.5 * dx * sum;
}

}  // namespace escat::quadrature
