#include "escat/verify.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "escat/cgo.hpp"
#include "escat/experiments.hpp"
#include "escat/fields.hpp"
#include "escat/forward.hpp"
#include "escat/geometry.hpp"
#include "escat/identity.hpp"
#include "escat/output.hpp"
#include "escat/smallness.hpp"

namespace escat::verify {

Real wronskian_max_deviation(const BesselFn& bessel) {
  Real worst = 0.0;
  for (Real x = 0.1; x <= 50.0 + 1e-9; x += 0.1) {
    const Real w = bessel(specfun::BesselKind::J, 1, x) * bessel(specfun::BesselKind::Y, 0, x) -
                   bessel(specfun::BesselKind::J, 0, x) * bessel(specfun::BesselKind::Y, 1, x);
    worst = std::max(worst, std::abs(w - 2.0 / (M_PI * x)));
  }
  return worst;
}

namespace {

using Recorder = std::function<void(const std::string&, const std::string&, bool, Real)>;

void specfun_checks(const Recorder& record) {
  record("specfun", "wronskian", wronskian_max_deviation(specfun::bessel) <= 1e-8,
         wronskian_max_deviation(specfun::bessel));

  Real worst_identity = 0.0;
  bool bounds_hold = true;
  bool monotone = true;
  for (Real s = 0.5; s <= 6.0 + 1e-9; s += 0.5) {
    Real prev_lower = -1.0;
    Real prev_upper = std::numeric_limits<Real>::infinity();
    for (Real x = 0.0; x <= 50.0 + 1e-9; x += 0.5) {
      const auto pair = specfun::incomplete_gamma(s, x);
      const Real total = std::tgamma(s);
      worst_identity = std::max(worst_identity, std::abs(pair.lower + pair.upper - total) / total);
      const auto bounds = specfun::gamma_bound_check(s, x);
      bounds_hold = bounds_hold && bounds.holds_lower && bounds.holds_upper;
      monotone = monotone && pair.lower >= prev_lower - 1e-12 * total &&
                 pair.upper <= prev_upper + 1e-12 * total;
      prev_lower = pair.lower;
      prev_upper = pair.upper;
    }
  }
  record("specfun", "gamma-identity", worst_identity <= 1e-10, worst_identity);
  record("specfun", "gamma-bounds", bounds_hold, bounds_hold ? 0.0 : 1.0);
  record("specfun", "gamma-monotone", monotone, monotone ? 0.0 : 1.0);

  // J1'(x) = J0(x) - J1(x)/x, centered difference
  Real worst_rec = 0.0;
  const Real fd = 1e-6;
  for (Real x = 0.1; x <= 50.0 + 1e-9; x += 0.25) {
    const Real deriv = (specfun::bessel_j1(x + fd) - specfun::bessel_j1(x - fd)) / (2.0 * fd);
    worst_rec = std::max(worst_rec,
                         std::abs(deriv - (specfun::bessel_j0(x) - specfun::bessel_j1(x) / x)));
  }
  record("specfun", "bessel-recurrence", worst_rec <= 1e-7, worst_rec);
}

void material_checks(const Recorder& record, Rng& rng) {
  Real worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const Real mu = rng.uniform(0.2, 5.0);
    const Real lambda = rng.uniform(-0.5 * mu, 5.0);
    const Real omega = rng.uniform(0.5, 10.0);
    const auto ctx = wavenumbers(LameParameters(lambda, mu), omega);
    worst = std::max(worst, std::abs(ctx.kappa_s * std::sqrt(mu) - omega) / omega);
    worst = std::max(worst,
                     std::abs(ctx.kappa_p * std::sqrt(lambda + 2.0 * mu) - omega) / omega);
  }
  record("material", "wavenumber-identity", worst <= 1e-12, worst);

  const LameParameters lame(1.0, 1.0);
  const auto ctx = wavenumbers(lame, 2.0);
  const IncidentWave wave = IncidentWave::plane({1.0, 0.0}, {0.5, 0.5}, 0.3, ctx);
  const auto field = VectorField2::sample(
      [&wave](const Vec2& x) { return incident_field(wave, x); }, Vec2(-0.004, -0.004), 1e-3, 9, 9);
  const auto report = navier_residual_report(
      field, [](const Vec2&) { return 1.0; }, ctx, lame);
  record("material", "incident-residual", report.max_rel <= 1e-5, report.max_rel);
}

void cgo_checks(const Recorder& record, Rng& rng) {
  Real worst_algebra = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Real kappa = rng.uniform(0.5, 4.0);
    const Real tau = kappa * rng.uniform(1.5, 100.0);
    const Real angle = rng.uniform(0.0, 2.0 * M_PI);
    const Vec2 p(std::cos(angle), std::sin(angle));
    const auto params = cgo::make_cgo(Vec2::Zero(), p, rot90(p), tau, kappa);
    worst_algebra = std::max(worst_algebra,
                             std::abs(bdot(params.xi, params.xi) + kappa * kappa));
    worst_algebra = std::max(
        worst_algebra,
        std::abs(params.xi.norm() - std::sqrt(2.0 * tau * tau + kappa * kappa)));
    worst_algebra = std::max(
        worst_algebra,
        std::abs(params.eta.norm() - std::sqrt(2.0 + kappa * kappa / (tau * tau))));
  }
  record("cgo", "frame-algebra", worst_algebra <= 1e-10, worst_algebra);

  Real worst_res = 0.0;
  for (const auto& [tau, kappa] : {std::pair{2.0, 1.0}, {10.0, 1.0}, {50.0, 2.0}}) {
    const LameParameters lame(1.0, 1.0);
    const Real omega = kappa * std::sqrt(lame.mu);
    const auto ctx = wavenumbers(lame, omega);
    const Vec2 p = Vec2(1.0, 2.0).normalized();
    const auto params = cgo::make_cgo(Vec2(0.3, -0.2), p, rot90(p), tau, kappa);
    for (int k = 0; k < 20; ++k) {
      const Real along = rng.uniform(0.1, 2.0) / tau;
      const Real across = rng.uniform(-1.0, 1.0) / tau;
      const Vec2 x = params.x0 + along * p + across * rot90(p);
      const auto rep = navier_residual_at(
          [&params](const Vec2& y) { return cgo::cgo_field(params, y); }, x, 1e-3 / tau, 1.0,
          ctx, lame);
      worst_res = std::max(worst_res, rep.max_rel);
    }
  }
  record("cgo", "field-residual", worst_res <= 1e-5, worst_res);

  bool floors_ok = true;
  Real worst_gap = 0.0;
  for (int k = 0; k < 20; ++k) {
    const CVec2 u(Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
                  Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)));
    if (u.norm() < 1e-3) continue;
    const Real angle = rng.uniform(0.0, 2.0 * M_PI);
    const auto choice = cgo::choose_p_perp(u, Vec2(std::cos(angle), std::sin(angle)), 1.0);
    floors_ok = floors_ok && choice.c0_witness > 0.0 &&
                choice.c0_witness >= choice.proof_bound * (1.0 - 1e-9);
    worst_gap = std::max(worst_gap, choice.proof_bound - choice.c0_witness);
  }
  record("cgo", "p-perp-floor", floors_ok, worst_gap);
}

void geometry_checks(const Recorder& record, Rng& rng) {
  bool hull_ok = true;
  for (int rep = 0; rep < 10 && hull_ok; ++rep) {
    std::vector<Vec2> points;
    for (int k = 0; k < 100; ++k) points.push_back(rng.in_disk(Vec2(0.0, 0.0), 1.0));
    const auto hull = geometry::convex_hull(points);
    for (const auto& pt : points) hull_ok = hull_ok && hull.contains(pt);
    const auto hull2 = geometry::convex_hull(hull.vertices());
    hull_ok = hull_ok && hull2.size() == hull.size();
  }
  record("geometry", "hull-containment-idempotence", hull_ok, hull_ok ? 0.0 : 1.0);

  auto random_polygon = [&rng](const Vec2& center) {
    std::vector<Vec2> points;
    for (int k = 0; k < 12; ++k) points.push_back(rng.in_disk(center, 0.8));
    return geometry::convex_hull(points);
  };
  Real worst_triangle = 0.0;
  Real worst_symmetry = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const auto a = random_polygon(Vec2(0.0, 0.0));
    const auto b = random_polygon(Vec2(1.5, 0.4));
    const auto c = random_polygon(Vec2(-0.7, 1.2));
    const Real ab = geometry::hausdorff_distance(a, b);
    const Real ba = geometry::hausdorff_distance(b, a);
    worst_symmetry = std::max(worst_symmetry, std::abs(ab - ba));
    const Real ac = geometry::hausdorff_distance(a, c);
    const Real cb = geometry::hausdorff_distance(c, b);
    worst_triangle = std::max(worst_triangle, ab - (ac + cb));
  }
  record("geometry", "hausdorff-symmetry", worst_symmetry <= 1e-12, worst_symmetry);
  record("geometry", "hausdorff-triangle", worst_triangle <= 1e-12, worst_triangle);

  Real worst_decay = -1.0;
  const auto square = experiments::named_shape("square");
  for (int i = 0; i < square.size(); ++i) {
    const auto cone = geometry::vertex_cone(square, i);
    const auto [p, delta0] = geometry::direction_and_delta0(cone);
    for (int k = 0; k < 2500; ++k) {
      const Real spread = rng.uniform(-cone.half_angle, cone.half_angle);
      const Real radius = rng.uniform(1e-6, 2.0);
      const Real base = std::atan2(cone.bisector.y(), cone.bisector.x());
      const Vec2 x = cone.apex + radius * Vec2(std::cos(base + spread), std::sin(base + spread));
      worst_decay = std::max(worst_decay, p.dot(x - cone.apex) / (x - cone.apex).norm() + delta0);
    }
  }
  record("geometry", "delta0-decay", worst_decay <= 1e-12, worst_decay);
}

void smallness_checks(const Recorder& record, Rng& rng) {
  int passes = 0;
  const int cases = 20;
  Real worst_residual = 0.0;
  for (int k = 0; k < cases; ++k) {
    std::vector<Complex> coeffs(2 * 6 + 1);
    for (auto& c : coeffs) c = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const auto field = smallness::synth_helmholtz(2.0, coeffs, Vec2::Zero());
    const auto tcase = smallness::default_three_spheres_case(0.5, 2.0, field);
    const auto report = smallness::three_spheres_check(tcase);
    if (report.holds && report.fitted_beta > 0.0 && report.fitted_beta < 1.0) ++passes;

    // scalar Helmholtz residual of the synthetic field at a few points
    for (int j = 0; j < 3; ++j) {
      const Vec2 x = rng.in_disk(Vec2(0.3, 0.1), 1.0);
      const Real h = 1e-4;
      const Complex lap = (field.value(x + Vec2(h, 0)) + field.value(x - Vec2(h, 0)) +
                           field.value(x + Vec2(0, h)) + field.value(x - Vec2(0, h)) -
                           4.0 * field.value(x)) /
                          (h * h);
      const Complex res = lap + field.kappa * field.kappa * field.value(x);
      const Real scale = std::max(field.kappa * field.kappa * std::abs(field.value(x)), 1e-12);
      worst_residual = std::max(worst_residual, std::abs(res) / scale);
    }
  }
  record("smallness", "three-spheres-corpus", passes == cases, static_cast<Real>(passes));
  record("smallness", "helmholtz-residual", worst_residual <= 1e-6, worst_residual);
}

void forward_checks(const Recorder& record) {
  const LameParameters lame(1.0, 1.0);
  const auto ctx = wavenumbers(lame, 2.0);
  const IncidentWave wave = IncidentWave::plane({1.0, 0.0}, {0.0, 0.0}, 0.0, ctx);
  const auto density = DensityField::constant(experiments::named_shape("square"), 0.0);
  const auto grid = SolverGrid::build(density, ctx, 12);
  const auto sol = solve(density, wave, lame, grid);
  const Real norm = far_field_norm(far_field(sol, 32));
  record("forward", "zero-contrast-invisible", norm <= 1e-10, norm);
  record("forward", "solve-residual", sol.residual_norm <= 1e-8, sol.residual_norm);
}

void identity_checks(const Recorder& record, Rng& rng) {
  const LameParameters lame(1.3, 0.8);
  const auto ctx = wavenumbers(lame, 2.0);
  Real worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const IncidentWave w1 = IncidentWave::plane({1.0, 0.0}, {0.0, 0.5}, rng.uniform(0, 2 * M_PI), ctx);
    const IncidentWave w2 = IncidentWave::plane({0.0, 0.7}, {0.3, 0.0}, rng.uniform(0, 2 * M_PI), ctx);
    const Complex a(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const Complex b(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const Vec2 x = rng.in_disk(Vec2::Zero(), 1.0);
    const Real angle = rng.uniform(0.0, 2.0 * M_PI);
    const identity::TractionContext tctx(lame, Vec2(std::cos(angle), std::sin(angle)));
    const Real step = 1e-5 * 2.0 * M_PI / ctx.kappa_s;
    auto f1 = [&](const Vec2& y) { return incident_field(w1, y); };
    auto f2 = [&](const Vec2& y) { return incident_field(w2, y); };
    auto combo = [&](const Vec2& y) { return CVec2(a * f1(y) + b * f2(y)); };
    const CVec2 lhs = identity::surface_traction(combo, x, tctx, step);
    const CVec2 rhs = a * identity::surface_traction(f1, x, tctx, step) +
                      b * identity::surface_traction(f2, x, tctx, step);
    worst = std::max(worst, (lhs - rhs).norm());
  }
  record("identity", "traction-linearity", worst <= 1e-8, worst);
}

}  // namespace

VerifyReport run_verify_suite(std::uint64_t seed) {
  VerifyReport report;
  const Recorder record = [&report](const std::string& suite, const std::string& name, bool pass,
                                    Real measured) {
    report.checks.push_back({suite, name, pass, output::format_real(measured)});
  };
  Rng rng(seed);
  specfun_checks(record);
  material_checks(record, rng);
  cgo_checks(record, rng);
  geometry_checks(record, rng);
  smallness_checks(record, rng);
  forward_checks(record);
  identity_checks(record, rng);
  report.all_pass = true;
  for (const auto& check : report.checks) report.all_pass = report.all_pass && check.pass;
  return report;
}

std::string report_to_json(const VerifyReport& report, std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["tool"] = "escat-verify";
  j["seed"] = seed;
  j["all_pass"] = report.all_pass;
  j["checks"] = nlohmann::json::array();
  for (const auto& check : report.checks) {
    nlohmann::ordered_json c;
    c["suite"] = check.suite;
    c["name"] = check.name;
    c["pass"] = check.pass;
    c["measured"] = check.detail;
    j["checks"].push_back(std::move(c));
  }
  return j.dump(2);
}

}  // namespace escat::verify
