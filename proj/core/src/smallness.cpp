#include "escat/smallness.hpp"

#include <cmath>

namespace escat::smallness {

Complex FourierBesselField::value(const Vec2& x) const {
  const Vec2 d = x - center;
  const Real r = d.norm();
  const Real theta = std::atan2(d.y(), d.x());
  const int k = max_mode();
  Complex sum{0.0, 0.0};
  for (int m = -k; m <= k; ++m) {
    const Complex c = coeffs[m + k];
    if (c == Complex{0.0, 0.0}) continue;
    sum += c * std::cyl_bessel_j(std::abs(m), kappa * r) * std::exp(kImag * (m * theta));
  }
  return sum;
}

FourierBesselField synth_helmholtz(Real kappa, std::vector<Complex> coeffs, const Vec2& center) {
  require(kappa > 0.0, ErrorKind::Parameter, "synth_helmholtz: kappa must be positive");
  require(!coeffs.empty() && coeffs.size() % 2 == 1, ErrorKind::Parameter,
          "synth_helmholtz: coeffs must list modes -K..K (odd length)");
  require(coeffs.size() <= 41, ErrorKind::Parameter, "synth_helmholtz: at most 20 modes");
  return FourierBesselField{kappa, center, std::move(coeffs)};
}

FourierBesselField plane_wave_modes(Real kappa, const Vec2& direction, const Vec2& center,
                                    int max_mode) {
  require(std::abs(direction.norm() - 1.0) < 1e-9, ErrorKind::Parameter,
          "plane_wave_modes: direction must be unit");
  require(max_mode >= 0 && max_mode <= 20, ErrorKind::Parameter,
          "plane_wave_modes: max_mode in [0, 20]");
  // e^(i k x.d) = e^(i k center.d) sum_m i^m J_m(k r) e^(i m (theta - phi_d))
  const Real phi = std::atan2(direction.y(), direction.x());
  const Complex base = std::exp(kImag * kappa * center.dot(direction));
  std::vector<Complex> coeffs(2 * max_mode + 1);
  for (int m = -max_mode; m <= max_mode; ++m) {
    const Complex im_pow = std::exp(kImag * (M_PI / 2.0) * static_cast<Real>(m));
    // J_-m = (-1)^m J_m folds the negative orders onto J_|m|
    const Real fold = m < 0 && (std::abs(m) % 2 == 1) ? -1.0 : 1.0;
    coeffs[m + max_mode] = base * im_pow * fold * std::exp(-kImag * (m * phi));
  }
  return synth_helmholtz(kappa, std::move(coeffs), center);
}

Real ball_sup_norm(const ScalarFn& field, const Vec2& center, Real radius, int radial,
                   int angular) {
  require(radius > 0.0 && radial >= 2 && angular >= 4, ErrorKind::Parameter,
          "ball_sup_norm: bad sampling request");
  Real best = std::abs(field(center));
  for (int i = 1; i <= radial; ++i) {
    const Real r = radius * i / radial;
    for (int j = 0; j < angular; ++j) {
      const Real theta = 2.0 * M_PI * j / angular;
      best = std::max(best, std::abs(field(center + r * Vec2(std::cos(theta), std::sin(theta)))));
    }
  }
  return best;
}

ThreeSpheresCase default_three_spheres_case(Real r, Real kappa, FourierBesselField field,
                                            const Vec2& center) {
  require(r > 0.0, ErrorKind::Parameter, "three spheres: r must be positive");
  return ThreeSpheresCase{center, r, 2.0 * r, 4.0 * r, 2.0 * M_SQRT2 * r, kappa,
                          std::move(field)};
}

ThreeSpheresReport three_spheres_check(const ScalarFn& field, const Vec2& center, Real r1, Real r2,
                                       Real r3, Real s) {
  require(0.0 < r1 && r1 < r2 && r2 < r3, ErrorKind::Parameter,
          "three_spheres_check: radii must satisfy 0 < r1 < r2 < r3");
  require(s > r2 && s < r3, ErrorKind::Parameter, "three_spheres_check: s must lie in (r2, r3)");

  ThreeSpheresReport report;
  // nested balls have nested sups; the cumulative max keeps the sampled
  // estimates consistent across the three independent polar lattices
  report.sup1 = ball_sup_norm(field, center, r1);
  report.sup2 = std::max(ball_sup_norm(field, center, r2), report.sup1);
  report.sup3 = std::max(ball_sup_norm(field, center, r3), report.sup2);
  require(report.sup1 > 0.0, ErrorKind::Parameter,
          "three_spheres_check: field vanishes on the innermost ball");

  const Real prefactor = std::pow(1.0 - r2 / s, -1.5);  // with the C = 1 floor
  const Real log_r31 = std::log(r3 / r1);
  report.beta_lo = std::log(r3 / s) / log_r31;
  report.beta_hi = 1.0 - std::log(s / r1) / log_r31;

  const Real denom = std::log(report.sup1 / report.sup3);
  if (std::abs(denom) < 1e-12) {
    // constant-modulus fields: inequality reduces to sup2 <= prefactor * sup3
    report.degenerate = true;
    report.fitted_beta = 0.5;
    report.beta_raw = 0.5;
    report.holds = report.sup2 <= prefactor * report.sup3 * (1.0 + 1e-12);
    return report;
  }
  report.beta_raw = std::log(report.sup2 / (prefactor * report.sup3)) / denom;
  report.fitted_beta = std::clamp(report.beta_raw, 1e-6, 1.0 - 1e-6);
  const Real rhs = prefactor * std::pow(report.sup3, 1.0 - report.fitted_beta) *
                   std::pow(report.sup1, report.fitted_beta);
  report.holds = report.sup2 <= rhs * (1.0 + 1e-12);
  return report;
}

ThreeSpheresReport three_spheres_check(const ThreeSpheresCase& tcase) {
  return three_spheres_check([&tcase](const Vec2& x) { return tcase.field.value(x); },
                             tcase.center, tcase.r1, tcase.r2, tcase.r3, tcase.s);
}

BallChain build_chain(const std::vector<Vec2>& polyline, Real r) {
  require(polyline.size() >= 2, ErrorKind::Parameter, "build_chain: needs at least 2 points");
  require(r > 0.0, ErrorKind::Parameter, "build_chain: r must be positive");

  Real length = 0.0;
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i)
    length += (polyline[i + 1] - polyline[i]).norm();
  require(length > 0.0, ErrorKind::Parameter, "build_chain: polyline has zero length");

  BallChain chain;
  chain.polyline = polyline;
  chain.r = r;
  chain.n_steps = static_cast<int>(std::ceil(length / r - 1e-12));

  auto point_at_arc = [&polyline](Real target) {
    Real walked = 0.0;
    for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
      const Real seg = (polyline[i + 1] - polyline[i]).norm();
      if (walked + seg >= target - 1e-12) {
        const Real t = seg > 0.0 ? (target - walked) / seg : 0.0;
        return Vec2(polyline[i] + t * (polyline[i + 1] - polyline[i]));
      }
      walked += seg;
    }
    return polyline.back();
  };

  const Real spacing = length / chain.n_steps;
  for (int k = 0; k <= chain.n_steps; ++k) chain.centers.push_back(point_at_arc(k * spacing));
  return chain;
}

ChainDecayReport chain_decay_experiment(const std::function<Real(const Vec2&)>& magnitude,
                                        const BallChain& chain, Real t_bound, Real beta) {
  require(beta > 0.0 && beta < 1.0, ErrorKind::Parameter,
          "chain_decay_experiment: beta must lie in (0, 1)");
  ChainDecayReport report;
  report.beta = beta;
  auto sup_of = [&](const Vec2& c) {
    return ball_sup_norm([&magnitude](const Vec2& x) { return Complex(magnitude(x), 0.0); }, c,
                         chain.r, 24, 48);
  };
  for (const auto& c : chain.centers) report.sup_norms.push_back(sup_of(c));
  for (std::size_t k = 0; k + 1 < report.sup_norms.size(); ++k) {
    if (report.sup_norms[k + 1] > report.sup_norms[k]) report.monotone = false;
    if (report.sup_norms[k] > 0.0)
      report.per_step_factors.push_back(report.sup_norms[k + 1] / report.sup_norms[k]);
  }
  const Real m1 = report.sup_norms.front();
  const Real mlast = report.sup_norms.back();
  report.rhs = t_bound * std::pow(m1, std::pow(beta, chain.n_steps + 1));
  report.shape_holds = mlast <= report.rhs * (1.0 + 1e-12);
  return report;
}

FarToNearReport far_to_near_experiment(const FarToNearConfig& config) {
  const LameParameters lame(config.lambda, config.mu);
  const WaveContext ctx = wavenumbers(lame, config.omega);
  const IncidentWave wave = IncidentWave::plane(config.alpha1, config.alpha2,
                                                config.incident_angle, ctx);

  // Enclosing radius R from the support, annulus between t R and 2 t R.
  Real radius = 0.0;
  for (const auto& v : config.base.support.vertices()) radius = std::max(radius, v.norm());
  require(radius > 0.0, ErrorKind::Parameter, "far_to_near: support must not collapse to origin");

  const SolverGrid grid = SolverGrid::build(config.base, ctx, config.cells_across);
  const SolveOptions opts{config.threads};

  auto solve_with_delta = [&](Real delta) {
    DensityField perturbed = config.base;
    const auto base_profile = config.base.profile;
    perturbed.profile = [base_profile, delta](const Vec2& x) { return base_profile(x) + delta; };
    return solve(perturbed, wave, lame, grid, opts);
  };

  const ScatteringSolution base_sol = solve_with_delta(0.0);
  const FarFieldPattern base_far = far_field(base_sol, config.directions);

  // Annulus sample set (polar grid with area weights for a discrete L2 norm).
  const Real r_in = config.t * radius;
  const Real r_out = 2.0 * config.t * radius;
  std::vector<Vec2> points;
  std::vector<Real> areas;
  const int n_r = 12, n_t = 48;
  for (int i = 0; i < n_r; ++i) {
    const Real r = r_in + (r_out - r_in) * (i + 0.5) / n_r;
    const Real dr = (r_out - r_in) / n_r;
    for (int j = 0; j < n_t; ++j) {
      const Real theta = 2.0 * M_PI * (j + 0.5) / n_t;
      points.emplace_back(r * std::cos(theta), r * std::sin(theta));
      areas.push_back(r * dr * 2.0 * M_PI / n_t);
    }
  }

  std::vector<CVec2> base_near(points.size());
  Real field_bound = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    base_near[i] = scattered_near_field(base_sol, points[i]);
    field_bound = std::max(field_bound,
                           (base_near[i] + incident_field(wave, points[i])).norm());
  }

  FarToNearReport report;
  for (const Real delta : config.contrast_deltas) {
    const ScatteringSolution sol = solve_with_delta(delta);
    const FarFieldPattern far = far_field(sol, config.directions);
    const Real eps = far_field_distance(base_far, far);
    Real near_sq = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const CVec2 diff = scattered_near_field(sol, points[i]) - base_near[i];
      near_sq += diff.squaredNorm() * areas[i];
      field_bound = std::max(field_bound,
                             (scattered_near_field(sol, points[i]) +
                              incident_field(wave, points[i])).norm());
    }
    report.epsilons.push_back(eps);
    report.near_norms.push_back(std::sqrt(near_sq));
    report.excluded.push_back(eps < config.noise_floor);
  }

  report.t_bound = std::max(1.0, 2.0 * field_bound);

  std::vector<Real> xs_sqrt, xs_pow, ys;
  std::vector<Real> eps_kept, near_kept;
  for (std::size_t i = 0; i < report.epsilons.size(); ++i) {
    if (report.excluded[i] || report.near_norms[i] <= 0.0) continue;
    xs_sqrt.push_back(std::sqrt(std::log(report.t_bound / report.epsilons[i])));
    xs_pow.push_back(std::log(report.epsilons[i]));
    ys.push_back(std::log(report.near_norms[i]));
    eps_kept.push_back(report.epsilons[i]);
    near_kept.push_back(report.near_norms[i]);
  }
  if (ys.size() >= 2) {
    report.sqrtlog_fit = fitting::fit_line(xs_sqrt, ys);
    report.power_fit = fitting::fit_line(xs_pow, ys);
    report.spearman = fitting::spearman(eps_kept, near_kept);
  }
  return report;
}

}  // namespace escat::smallness
