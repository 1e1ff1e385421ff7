// Acceptance suite: one binary, one printed pass/fail line per criterion.
// Exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "escat/cgo.hpp"
#include "escat/experiments.hpp"
#include "escat/fields.hpp"
#include "escat/fitting.hpp"
#include "escat/forward.hpp"
#include "escat/identity.hpp"
#include "escat/output.hpp"
#include "escat/smallness.hpp"
#include "escat/specfun.hpp"
#include "escat/verify.hpp"
#include "oracles.hpp"

using namespace escat;

namespace {

struct Criterion {
  int id;
  std::string label;
  bool pass;
  double seconds;
  std::string detail;
};

std::vector<Criterion> results;

template <typename Fn>
void run(int id, const std::string& label, double budget_seconds, Fn&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    detail = body(pass);
  } catch (const std::exception& e) {
    pass = false;
    detail = std::string("exception: ") + e.what();
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (seconds > budget_seconds) {
    pass = false;
    detail += " [over budget " + std::to_string(budget_seconds) + "s]";
  }
  results.push_back({id, label, pass, seconds, detail});
  std::printf("[%s] %2d. %-34s %7.2fs  %s\n", pass ? "PASS" : "FAIL", id, label.c_str(), seconds,
              detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---- shared fixtures -------------------------------------------------------

const LameParameters kLame{1.0, 1.0};

geometry::ConvexPolygon unit_square() {
  return geometry::ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

}  // namespace

int main() {
  std::printf("acceptance: 2D elastic scattering laboratory\n");

  // 1. zero-contrast invisibility on a 32x32 grid
  run(1, "zero-contrast invisibility", 5.0, [](bool& pass) {
    const auto ctx = wavenumbers(kLame, 2.0 * M_PI);
    const auto wave = IncidentWave::plane({1.0, 0.0}, {0.5, 0.0}, 0.3, ctx);
    const auto density = DensityField::constant(unit_square(), 0.0);
    const auto sol = solve(density, wave, kLame, SolverGrid::build(density, ctx, 32));
    const Real norm = far_field_norm(far_field(sol, 64));
    pass = norm <= 1e-10;
    return "|U| = " + fmt(norm);
  });

  // 2. CGO probe fields solve the homogeneous equation
  run(2, "cgo field residual", 1.0, [](bool& pass) {
    Rng rng(5);
    Real worst = 0.0;
    for (const auto& [tau, kappa] : {std::pair{2.0, 1.0}, {10.0, 1.0}, {50.0, 2.0}}) {
      const auto ctx = wavenumbers(kLame, kappa * std::sqrt(kLame.mu));
      const Vec2 p = Vec2(1.0, -0.7).normalized();
      const auto params = cgo::make_cgo(Vec2(0.1, 0.4), p, rot90(p), tau, kappa);
      for (int k = 0; k < 20; ++k) {
        const Vec2 x = params.x0 + (rng.uniform(0.05, 2.0) / tau) * (-p) +
                       (rng.uniform(-1.0, 1.0) / tau) * rot90(p);
        worst = std::max(worst, navier_residual_at(
                                    [&params](const Vec2& y) { return cgo::cgo_field(params, y); },
                                    x, 1e-3 / tau, 1.0, ctx, kLame)
                                    .max_rel);
      }
    }
    pass = worst <= 1e-5;
    return "max relative residual " + fmt(worst);
  });

  // 3. CGO frame algebra across a parameter grid (tau <= 100 kappa: the
  // xi.xi cancellation loses tau^2 eps absolutely, which bounds the range
  // where a 1e-10 absolute certificate is meaningful in double precision)
  run(3, "cgo frame algebra", 1.0, [](bool& pass) {
    Rng rng(6);
    Real worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const Real kappa = rng.uniform(0.5, 4.0);
      const Real tau = kappa * rng.uniform(1.01, 100.0);
      const Real angle = rng.uniform(0.0, 2.0 * M_PI);
      const Vec2 p(std::cos(angle), std::sin(angle));
      const auto params = cgo::make_cgo(Vec2::Zero(), p, rot90(p), tau, kappa);
      worst = std::max(worst, std::abs(bdot(params.xi, params.xi) + kappa * kappa));
      worst = std::max(worst,
                       std::abs(params.xi.norm() - std::sqrt(2.0 * tau * tau + kappa * kappa)));
      worst = std::max(worst, std::abs(params.eta.norm() -
                                       std::sqrt(2.0 + kappa * kappa / (tau * tau))));
      if (params.eta.norm() > std::sqrt(3.0)) worst = 1.0;
    }
    pass = worst <= 1e-10;
    return "max algebra defect " + fmt(worst);
  });

  // 4. Betti identity residuals over three simultaneous refinement levels,
  // each level individually inside the 120 s budget
  run(4, "betti identity refinement", 900.0, [](bool& pass) {
    pass = true;
    std::string detail;
    const int level_cells[3] = {16, 32, 64};
    for (const char* probe : {"plane", "cgo"}) {
      std::vector<Real> residuals;
      for (int i = 0; i < 3; ++i) {
        config::ExperimentConfig cfg;
        cfg.wave.omega = 2.0;
        cfg.wave.alpha2 = {0.4, 0.1};
        cfg.wave.direction = 0.3;
        cfg.scatterer.contrast = 0.5;
        cfg.betti.probe = probe;
        cfg.betti.cells = {level_cells[i]};
        cfg.betti.nodes_per_edge = 256 >> (2 - i);
        const auto t0 = std::chrono::steady_clock::now();
        const auto result = experiments::run_betti_check(cfg);
        const double level_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        pass = pass && level_seconds < 120.0 && result.levels.size() == 1;
        residuals.push_back(result.levels[0].report.rel_residual);
      }
      for (std::size_t i = 0; i + 1 < residuals.size(); ++i)
        pass = pass && residuals[i + 1] < residuals[i];
      pass = pass && residuals.back() <= 2e-2;
      detail += std::string(probe) + ":" + fmt(residuals.back()) + " ";
    }
    return detail;
  });

  // 5. sector integral lower-bound shape and oracle agreement
  run(5, "sector integral", 10.0, [](bool& pass) {
    pass = true;
    Real worst_ratio = 0.0;
    for (const Real half : {M_PI / 6.0, M_PI / 4.0, M_PI / 3.0}) {
      const geometry::Cone2D cone(Vec2(0, 0), Vec2(0.3, 1.0).normalized(), half);
      const auto [p, delta0] = geometry::direction_and_delta0(cone);
      Real lo = 1e300, hi = 0.0;
      for (const Real tau : {10.0, 20.0, 40.0, 80.0, 160.0}) {
        const auto params = cgo::make_cgo(cone.apex, p, rot90(p), tau, 1.0);
        const Real scaled = tau * tau * std::abs(cgo::sector_integral(cone, params));
        lo = std::min(lo, scaled);
        hi = std::max(hi, scaled);
      }
      worst_ratio = std::max(worst_ratio, hi / lo);
      const auto params = cgo::make_cgo(cone.apex, p, rot90(p), 10.0, 1.0);
      const Complex exact = cgo::sector_integral(cone, params);
      const Complex brute = oracles::sector_quadrature_2d(cone, params, 40.0 / (delta0 * 10.0));
      pass = pass && std::abs(exact - brute) <= 1e-6 * std::abs(exact);
    }
    pass = pass && worst_ratio <= 3.0;
    return "max tau^2-scaled spread " + fmt(worst_ratio);
  });

  // 6. p_perp selection floors match the brute-force tau-grid minimum
  run(6, "p_perp selection", 5.0, [](bool& pass) {
    Rng rng(1234);
    pass = true;
    Real worst_gap = 0.0;
    int evaluated = 0;
    while (evaluated < 100) {
      const CVec2 u(Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
                    Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)));
      if (u.norm() < 1e-6) continue;
      ++evaluated;
      const Real angle = rng.uniform(0.0, 2.0 * M_PI);
      const Vec2 p(std::cos(angle), std::sin(angle));
      const auto choice = cgo::choose_p_perp(u, p, 1.0);
      const Real brute = oracles::tau_grid_min(u, p, choice.p_perp, 1.0);
      pass = pass && choice.c0_witness > 0.0;
      pass = pass && std::abs(choice.c0_witness - brute) <= 1e-6 * std::max(brute, 1e-30);
      worst_gap = std::max(worst_gap, std::abs(choice.c0_witness - brute));
    }
    return "max witness gap " + fmt(worst_gap);
  });

  // 7. corner-term exponents
  run(7, "corner term exponents", 60.0, [](bool& pass) {
    const auto ctx = wavenumbers(kLame, 1.0);
    const auto wave = IncidentWave::plane({1.0, 0.0}, {0.3, 0.0}, 0.4, ctx);
    const auto density = DensityField::holder_bump(unit_square(), 0.5, 0.4, 0.5, Vec2(0, 0));
    const auto sol = solve(density, wave, kLame, SolverGrid::build(density, ctx, 20));
    identity::CornerTermConfig cfg;
    cfg.vertex_index = 0;
    cfg.h = 0.5;
    cfg.tau_list = {20, 28, 40, 57, 80, 113, 160};
    const auto rows = identity::corner_terms(density, sol, cfg);
    std::vector<Real> lt, lr2, lr3;
    for (const auto& row : rows) {
      lt.push_back(std::log(row.tau));
      lr2.push_back(std::log(row.r2));
      lr3.push_back(std::log(row.r3));
    }
    const Real slope2 = fitting::fit_line(lt, lr2).slope;
    const Real slope3 = fitting::fit_line(lt, lr3).slope;
    pass = slope2 >= -2.2 && slope2 <= -1.8 && slope3 >= -2.7 && slope3 <= -2.3;
    return "slope(R2) = " + fmt(slope2) + ", slope(R3) = " + fmt(slope3);
  });

  // 8. incomplete Gamma bounds and closed forms
  run(8, "incomplete gamma bounds", 1.0, [](bool& pass) {
    pass = true;
    for (Real s = 0.5; s <= 6.0; s += 0.5)
      for (Real x = 0.0; x <= 50.0; x += 0.5) {
        const auto report = specfun::gamma_bound_check(s, x);
        pass = pass && report.holds_lower && report.holds_upper;
      }
    const auto p11 = specfun::incomplete_gamma(1.0, 1.0);
    pass = pass && std::abs(p11.lower - (1.0 - std::exp(-1.0))) <= 1e-10;
    pass = pass && std::abs(p11.upper - std::exp(-1.0)) <= 1e-10;
    const auto p21 = specfun::incomplete_gamma(2.0, 1.0);
    pass = pass && std::abs(p21.lower - (1.0 - 2.0 * std::exp(-1.0))) <= 1e-10;
    const auto p34 = specfun::incomplete_gamma(3.0, 4.0);
    pass = pass && std::abs(p34.upper - 26.0 * std::exp(-4.0)) <= 1e-10;
    return std::string("grid 12x101 + closed forms");
  });

  // 9. three-spheres inequality on the seeded corpus
  run(9, "three spheres corpus", 30.0, [](bool& pass) {
    Rng rng(42);
    int holds = 0;
    for (int k = 0; k < 20; ++k) {
      std::vector<Complex> coeffs(13);
      for (auto& c : coeffs) c = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
      const auto field = smallness::synth_helmholtz(2.0, coeffs, Vec2::Zero());
      const auto report =
          smallness::three_spheres_check(smallness::default_three_spheres_case(0.5, 2.0, field));
      if (report.holds && report.fitted_beta > 0.0 && report.fitted_beta < 1.0) ++holds;
    }
    pass = holds == 20;
    return std::to_string(holds) + "/20 hold";
  });

  // 10. special function identities
  run(10, "bessel identities", 1.0, [](bool& pass) {
    Real worst = 0.0;
    for (Real x = 0.1; x <= 50.0; x += 0.1) {
      const Real w = specfun::bessel_j1(x) * specfun::bessel_y0(x) -
                     specfun::bessel_j0(x) * specfun::bessel_y1(x);
      worst = std::max(worst, std::abs(w - 2.0 / (M_PI * x)));
    }
    const Real asym =
        std::abs(std::abs(specfun::hankel1(0, 50.0)) * std::sqrt(50.0) - std::sqrt(2.0 / M_PI));
    pass = worst <= 1e-8 && asym <= 1e-2;
    return "wronskian " + fmt(worst) + ", asymptote " + fmt(asym);
  });

  // 11. far-field extrapolation contract and polarization structure
  run(11, "far-field contract", 60.0, [](bool& pass) {
    const auto ctx = wavenumbers(kLame, 2.0 * M_PI);
    const auto wave = IncidentWave::plane({1.0, 0.0}, {0.5, 0.0}, 0.4, ctx);
    const auto density = DensityField::constant(unit_square(), 0.5);
    const auto sol = solve(density, wave, kLame, SolverGrid::build(density, ctx, 32));
    const auto pattern = far_field(sol, 16);
    Real peak = 0.0;
    for (int m = 0; m < 16; ++m)
      peak = std::max({peak, pattern.u_p[m].norm(), pattern.u_s[m].norm()});

    const Real r = 60.0 * 2.0 * M_PI / ctx.kappa_p;
    Real worst_extrap = 0.0, worst_structure = 0.0;
    for (int m = 0; m < 16; ++m) {
      const Vec2 xhat(std::cos(pattern.angles[m]), std::sin(pattern.angles[m]));
      const CVec2 us = scattered_near_field(sol, r * xhat);
      const Complex radial = bdot(us, xhat);
      const CVec2 p_extrap =
          std::sqrt(r) * std::exp(-kImag * ctx.kappa_p * r) * radial * xhat.cast<Complex>();
      const CVec2 s_extrap = std::sqrt(r) * std::exp(-kImag * ctx.kappa_s * r) *
                             (us - radial * xhat.cast<Complex>());
      worst_extrap = std::max(worst_extrap, (p_extrap - pattern.u_p[m]).norm() / peak);
      worst_extrap = std::max(worst_extrap, (s_extrap - pattern.u_s[m]).norm() / peak);
      worst_structure = std::max(
          worst_structure,
          (pattern.u_p[m] - bdot(pattern.u_p[m], xhat) * xhat.cast<Complex>()).norm() / peak);
      worst_structure = std::max(worst_structure, std::abs(bdot(pattern.u_s[m], xhat)) / peak);
    }
    pass = worst_extrap <= 0.02 && worst_structure <= 1e-6;
    return "extrapolation " + fmt(worst_extrap) + ", structure " + fmt(worst_structure);
  });

  // 12. stability trend on the nested perturbation family
  run(12, "stability trend", 600.0, [](bool& pass) {
    config::ExperimentConfig cfg;
    cfg.grid.cells_across = 24;
    const auto result = experiments::run_stability_experiment(cfg);
    int included = 0;
    for (const auto& record : result.records)
      if (!record.excluded) ++included;
    pass = included == 6 && result.rank_correlation == 1.0 && result.fit_gamma > 0.0 &&
           result.fit_r2 >= 0.9;
    return "gamma = " + fmt(result.fit_gamma) + ", R2 = " + fmt(result.fit_r2) +
           ", rank = " + fmt(result.rank_correlation);
  });

  // 13. corner lower bound with the frozen first-run baseline
  run(13, "corner lower bound", 600.0, [](bool& pass) {
    config::ExperimentConfig cfg;
    cfg.grid.cells_across = 24;
    const auto result = experiments::run_corner_experiment(cfg);
    pass = result.floor_norm > 1e3 * std::max(result.control_norm, result.noise_floor);
    for (const auto& entry : result.entries) pass = pass && entry.admissible && entry.norm > 0.0;
    // frozen baseline from the first accepted run of this configuration
    // (default family, 24 cells across, omega = 2 pi): floor = 0.116639
    const Real baseline = 0.116639;
    pass = pass && std::abs(result.floor_norm - baseline) <= 0.2 * baseline;
    return "floor = " + fmt(result.floor_norm) + ", control = " + fmt(result.control_norm) +
           ", baseline drift = " + fmt(std::abs(result.floor_norm - baseline) / baseline);
  });

  // 14. determinism of verify and both experiments
  run(14, "determinism", 600.0, [](bool& pass) {
    const auto v1 = verify::report_to_json(verify::run_verify_suite(7), 7);
    const auto v2 = verify::report_to_json(verify::run_verify_suite(7), 7);

    config::ExperimentConfig cfg;
    cfg.grid.cells_across = 14;
    cfg.stability.perturbations = {0.2, 0.1, 0.05};
    cfg.corner.shapes = {"square"};
    cfg.corner.contrasts = {0.3, 0.6};

    auto emit_all = [&cfg](const std::string& dir) {
      experiments::emit_stability(cfg, experiments::run_stability_experiment(cfg),
                                  dir + "/stability");
      experiments::emit_corner(cfg, experiments::run_corner_experiment(cfg), dir + "/corner");
    };
    emit_all("acceptance_run_a");
    emit_all("acceptance_run_b");
    pass = v1 == v2;
    for (const char* file : {"/stability/stability.csv", "/stability/fit.json",
                             "/stability/stability.svg", "/stability/manifest.json",
                             "/corner/corner.csv", "/corner/corner.json"}) {
      pass = pass && output::read_text_file(std::string("acceptance_run_a") + file) ==
                         output::read_text_file(std::string("acceptance_run_b") + file);
    }
    std::filesystem::remove_all("acceptance_run_a");
    std::filesystem::remove_all("acceptance_run_b");
    return std::string(pass ? "byte-identical" : "outputs differ");
  });

  int failures = 0;
  for (const auto& result : results)
    if (!result.pass) ++failures;
  std::printf("%zu criteria, %d failed\n", results.size(), failures);
  return failures == 0 ? 0 : 1;
}
