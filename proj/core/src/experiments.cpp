#include "escat/experiments.hpp"

#include <cmath>
#include <filesystem>

#include <nlohmann/json.hpp>

#include "escat/fitting.hpp"
#include "escat/output.hpp"

namespace escat::experiments {

namespace {
constexpr const char* kVersion = "0.1.0";
}

geometry::ConvexPolygon named_shape(const std::string& name) {
  if (name == "square")
    return geometry::ConvexPolygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
  if (name == "triangle")
    return geometry::ConvexPolygon({{0.0, 0.0}, {1.0, 0.0}, {0.5, 0.5 * std::sqrt(3.0)}});
  if (name == "pentagon") {
    std::vector<Vec2> v;
    for (int k = 0; k < 5; ++k) {
      const Real angle = 2.0 * M_PI * k / 5.0 - M_PI / 2.0;
      v.emplace_back(0.5 + 0.6 * std::cos(angle), 0.55 + 0.6 * std::sin(angle));
    }
    return geometry::ConvexPolygon(std::move(v));
  }
  fail(ErrorKind::Parameter, "named_shape: unknown shape '" + name + "'");
}

geometry::ConvexPolygon round_corners(const geometry::ConvexPolygon& polygon, Real radius,
                                      int arc_points) {
  require(radius > 0.0, ErrorKind::Parameter, "round_corners: radius must be positive");
  require(arc_points >= 2, ErrorKind::Parameter, "round_corners: needs at least 2 arc points");
  std::vector<Vec2> out;
  const int n = polygon.size();
  for (int i = 0; i < n; ++i) {
    const Vec2 v = polygon.vertex(i);
    const Vec2 to_prev = (polygon.vertex(i - 1) - v).normalized();
    const Vec2 to_next = (polygon.vertex(i + 1) - v).normalized();
    const Real half = 0.5 * polygon.opening_angle(i);
    // circle inscribed in the corner wedge, tangent to both edges
    const Real offset = radius / std::tan(half);
    const Vec2 center = v + (to_prev + to_next).normalized() * (radius / std::sin(half));
    const Vec2 a = v + offset * to_prev;
    const Vec2 b = v + offset * to_next;
    const Real start = std::atan2((a - center).y(), (a - center).x());
    // positive (counter-clockwise) sweep from the incoming to the outgoing
    // tangent point keeps the rounded boundary convex
    const Real sweep =
        std::atan2(cross2(a - center, b - center), (a - center).dot(b - center));
    for (int k = 0; k < arc_points; ++k) {
      const Real angle = start + sweep * k / (arc_points - 1);
      out.emplace_back(center + radius * Vec2(std::cos(angle), std::sin(angle)));
    }
  }
  return geometry::ConvexPolygon(std::move(out));
}

namespace {

// Surrogate for the a-priori H2 bound: scattered-field peak on a ring just
// outside the scatterer, scaled by 10.
Real n_constant_surrogate(const ScatteringSolution& sol) {
  Real radius = 0.0;
  Vec2 center = Vec2::Zero();
  for (const auto& v : sol.support_vertices) center += v;
  center /= static_cast<Real>(sol.support_vertices.size());
  for (const auto& v : sol.support_vertices) radius = std::max(radius, (v - center).norm());
  Real peak = 0.0;
  for (int k = 0; k < 64; ++k) {
    const Real angle = 2.0 * M_PI * k / 64.0;
    const Vec2 x = center + 1.5 * radius * Vec2(std::cos(angle), std::sin(angle));
    peak = std::max(peak, scattered_near_field(sol, x).norm());
  }
  return 10.0 * std::max(peak, 1e-3);
}

}  // namespace

StabilityResult run_stability_experiment(const config::ExperimentConfig& cfg) {
  const LameParameters lame = cfg.wave.lame();
  const WaveContext ctx = cfg.wave.context();
  const IncidentWave wave = cfg.wave.wave();
  const SolveOptions opts{cfg.threads};

  const geometry::ConvexPolygon base_polygon(cfg.scatterer.vertices);
  const int mv = cfg.stability.move_vertex;
  const Vec2 outward = -geometry::vertex_cone(base_polygon, mv).bisector;

  // Family of perturbed polygons; one shared lattice over all of them.
  std::vector<geometry::ConvexPolygon> family;
  for (const Real t : cfg.stability.perturbations) {
    std::vector<Vec2> vertices = base_polygon.vertices();
    vertices[mv] += t * outward;
    family.emplace_back(std::move(vertices));
  }

  Vec2 lo = base_polygon.bbox().first;
  Vec2 hi = base_polygon.bbox().second;
  for (const auto& p : family) {
    lo = lo.cwiseMin(p.bbox().first);
    hi = hi.cwiseMax(p.bbox().second);
  }
  lo -= Vec2(cfg.grid.margin, cfg.grid.margin);
  hi += Vec2(cfg.grid.margin, cfg.grid.margin);

  auto density_for = [&cfg](geometry::ConvexPolygon polygon) {
    config::ScattererSpec spec = cfg.scatterer;
    spec.vertices = polygon.vertices();
    return spec.build();
  };

  const DensityField base = density_for(base_polygon);
  const SolverGrid base_grid = SolverGrid::build_in_box(base, ctx, lo, hi, cfg.grid.cells_across);
  const ScatteringSolution base_sol = solve(base, wave, lame, base_grid, opts);
  const FarFieldPattern base_far = far_field(base_sol, cfg.directions);

  StabilityResult result;
  result.n_constant =
      cfg.stability.n_constant > 0.0 ? cfg.stability.n_constant : n_constant_surrogate(base_sol);

  for (std::size_t i = 0; i < family.size(); ++i) {
    StabilityRecord record;
    record.d_h = geometry::hausdorff_distance(base_polygon, family[i]);
    const DensityField member = density_for(family[i]);
    const auto admissibility = check_admissible(member, cfg.admissibility);
    if (!admissibility.is_admissible) {
      record.excluded = true;
      record.note = "inadmissible: " + admissibility.violations.front();
      result.records.push_back(record);
      continue;
    }
    const SolverGrid grid = SolverGrid::build_in_box(member, ctx, lo, hi, cfg.grid.cells_across);
    const ScatteringSolution sol = solve(member, wave, lame, grid, opts);
    record.epsilon = far_field_distance(base_far, far_field(sol, cfg.directions));
    if (record.epsilon < 1e-9) {
      record.excluded = true;
      record.note = "epsilon at solver noise floor";
    } else if (record.epsilon >= result.n_constant / M_E) {
      // the double logarithm needs N/eps > e
      record.excluded = true;
      record.note = "epsilon too close to the a-priori constant";
    } else {
      record.double_log_x = std::log(std::log(result.n_constant / record.epsilon));
    }
    result.records.push_back(record);
  }

  std::vector<Real> xs, ys, dhs, epss;
  for (const auto& r : result.records) {
    if (r.excluded) continue;
    xs.push_back(std::log(r.double_log_x));
    ys.push_back(std::log(r.d_h));
    dhs.push_back(r.d_h);
    epss.push_back(r.epsilon);
  }
  if (xs.size() >= 2) {
    const auto fit = fitting::fit_line(xs, ys);
    result.fit_gamma = -fit.slope;
    result.fit_c = std::exp(fit.intercept);
    result.fit_r2 = fit.r2;
    result.rank_correlation = fitting::spearman(dhs, epss);
  }
  return result;
}

CornerResult run_corner_experiment(const config::ExperimentConfig& cfg) {
  const LameParameters lame = cfg.wave.lame();
  const WaveContext ctx = cfg.wave.context();
  const IncidentWave wave = cfg.wave.wave();
  const SolveOptions opts{cfg.threads};

  CornerResult result;
  result.noise_floor = cfg.corner.noise_floor;

  auto norm_for = [&](const DensityField& density) {
    const SolverGrid grid = SolverGrid::build(density, ctx, cfg.grid.cells_across, cfg.grid.margin);
    const ScatteringSolution sol = solve(density, wave, lame, grid, opts);
    return far_field_norm(far_field(sol, cfg.directions));
  };

  // rho == 1 control: zero contrast must be invisible.
  result.control_norm = norm_for(DensityField::constant(named_shape(cfg.corner.shapes.front()), 0.0));

  result.floor_norm = std::numeric_limits<Real>::infinity();
  for (const auto& shape : cfg.corner.shapes) {
    for (const Real contrast : cfg.corner.contrasts) {
      CornerEntry entry;
      entry.shape = shape;
      entry.contrast = contrast;
      const DensityField density = DensityField::constant(named_shape(shape), contrast);
      const auto admissibility = check_admissible(density, cfg.admissibility);
      entry.admissible = admissibility.is_admissible;
      if (!entry.admissible) {
        entry.note = admissibility.violations.front();
        result.entries.push_back(entry);
        continue;
      }
      entry.norm = norm_for(density);
      result.floor_norm = std::min(result.floor_norm, entry.norm);
      result.entries.push_back(entry);
    }
  }

  // Mollified companion of equal contrast mass, for qualitative comparison.
  const geometry::ConvexPolygon reference = named_shape(cfg.corner.shapes.front());
  const Real radius = cfg.corner.round_fraction * reference.shortest_edge_length();
  const geometry::ConvexPolygon rounded = round_corners(reference, radius);
  result.mollified_shape = cfg.corner.shapes.front();
  result.mollified_contrast =
      cfg.corner.contrasts.front() * reference.area() / rounded.area();
  result.mollified_norm = norm_for(DensityField::constant(rounded, result.mollified_contrast));
  return result;
}

BettiResult run_betti_check(const config::ExperimentConfig& cfg) {
  const LameParameters lame = cfg.wave.lame();
  const WaveContext ctx = cfg.wave.context();
  const IncidentWave wave = cfg.wave.wave();
  const SolveOptions opts{cfg.threads};
  const DensityField scatterer = cfg.scatterer.build();

  auto [lo, hi] = scatterer.support.bbox();
  lo -= Vec2(cfg.betti.margin, cfg.betti.margin);
  hi += Vec2(cfg.betti.margin, cfg.betti.margin);
  const geometry::ConvexPolygon region(
      {lo, Vec2(hi.x(), lo.y()), hi, Vec2(lo.x(), hi.y())});

  identity::ProbeField probe;
  BettiResult result;
  result.probe = cfg.betti.probe;
  if (cfg.betti.probe == "cgo") {
    const auto cone = geometry::vertex_cone(scatterer.support, cfg.betti.vertex);
    const auto [p, delta0] = geometry::direction_and_delta0(cone);
    (void)delta0;
    result.tau = cfg.betti.tau_factor * ctx.kappa_s;
    const auto params = cgo::make_cgo(cone.apex, p, rot90(p), result.tau, ctx.kappa_s);
    probe = identity::probe_from_cgo(params, lame);
  } else {
    // unit-amplitude plane p-wave probe, independent of the incident frame
    probe = identity::probe_from_plane_wave(
        IncidentWave::plane({1.0, 0.0}, {0.0, 0.0}, 0.7, ctx), lame);
  }

  // Levels refine the solver grid and the boundary quadrature together; the
  // configured nodes_per_edge applies to the finest level.
  const int n_levels = static_cast<int>(cfg.betti.cells.size());
  for (int i = 0; i < n_levels; ++i) {
    const SolverGrid grid = SolverGrid::build_in_box(scatterer, ctx, lo, hi, cfg.betti.cells[i]);
    const ScatteringSolution sol = solve(scatterer, wave, lame, grid, opts);
    identity::BettiOptions options;
    options.nodes_per_edge = std::max(8, cfg.betti.nodes_per_edge >> (n_levels - 1 - i));
    BettiLevel level;
    level.cells = cfg.betti.cells[i];
    level.nodes_per_edge = options.nodes_per_edge;
    level.report = identity::betti_identity_check(region, sol, probe, options);
    result.levels.push_back(level);
  }
  return result;
}

std::string run_manifest(const config::ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["tool"] = "escat";
  j["version"] = kVersion;
  j["seed"] = cfg.seed;
  j["config"] = nlohmann::ordered_json::parse(config::config_echo(cfg));
  return j.dump(2);
}

namespace {

void ensure_dir(const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  require(!ec, ErrorKind::Io, "cannot create output directory '" + out_dir + "'");
}

void write_manifest(const config::ExperimentConfig& cfg, const std::string& out_dir) {
  output::write_text_file(out_dir + "/manifest.json", run_manifest(cfg));
}

}  // namespace

void emit_stability(const config::ExperimentConfig& cfg, const StabilityResult& result,
                    const std::string& out_dir) {
  ensure_dir(out_dir);
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : result.records) {
    rows.push_back({output::format_real(r.d_h), output::format_real(r.epsilon),
                    output::format_real(r.double_log_x), r.excluded ? "1" : "0"});
  }
  output::write_text_file(out_dir + "/stability.csv",
                          output::to_csv({"d_H", "epsilon", "double_log_x", "excluded"}, rows));

  nlohmann::ordered_json fit;
  fit["n_constant"] = result.n_constant;
  fit["C"] = result.fit_c;
  fit["gamma"] = result.fit_gamma;
  fit["r2"] = result.fit_r2;
  fit["rank_correlation"] = result.rank_correlation;
  output::write_text_file(out_dir + "/fit.json", fit.dump(2));

  output::ScatterPlot plot;
  plot.title = "shape error vs double-log far-field discrepancy";
  plot.x_label = "ln ln ln(N/eps)";  // abscissa of the log-log fit
  plot.y_label = "ln d_H";
  for (const auto& r : result.records) {
    if (r.excluded) continue;
    plot.x.push_back(std::log(r.double_log_x));
    plot.y.push_back(std::log(r.d_h));
  }
  if (plot.x.size() >= 2) {
    plot.with_fit = true;
    plot.fit_slope = -result.fit_gamma;
    plot.fit_intercept = std::log(result.fit_c);
    output::write_text_file(out_dir + "/stability.svg", output::scatter_svg(plot));
  }
  write_manifest(cfg, out_dir);
}

void emit_corner(const config::ExperimentConfig& cfg, const CornerResult& result,
                 const std::string& out_dir) {
  ensure_dir(out_dir);
  std::vector<std::vector<std::string>> rows;
  for (const auto& e : result.entries) {
    rows.push_back({e.shape, output::format_real(e.contrast), output::format_real(e.norm),
                    e.admissible ? "1" : "0"});
  }
  output::write_text_file(out_dir + "/corner.csv",
                          output::to_csv({"shape", "contrast", "far_field_norm", "admissible"},
                                         rows));
  nlohmann::ordered_json j;
  j["control_norm"] = result.control_norm;
  j["floor_norm"] = result.floor_norm;
  j["noise_floor"] = result.noise_floor;
  j["mollified_shape"] = result.mollified_shape;
  j["mollified_contrast"] = result.mollified_contrast;
  j["mollified_norm"] = result.mollified_norm;
  output::write_text_file(out_dir + "/corner.json", j.dump(2));
  write_manifest(cfg, out_dir);
}

void emit_betti(const config::ExperimentConfig& cfg, const BettiResult& result,
                const std::string& out_dir) {
  ensure_dir(out_dir);
  std::vector<std::vector<std::string>> rows;
  for (const auto& level : result.levels) {
    const auto& r = level.report;
    rows.push_back({std::to_string(level.cells), std::to_string(level.nodes_per_edge),
                    output::format_real(r.lhs.real()), output::format_real(r.lhs.imag()),
                    output::format_real(r.rhs.real()), output::format_real(r.rhs.imag()),
                    output::format_real(r.abs_residual), output::format_real(r.rel_residual)});
  }
  output::write_text_file(
      out_dir + "/betti.csv",
      output::to_csv({"cells", "nodes_per_edge", "re_lhs", "im_lhs", "re_rhs", "im_rhs",
                      "abs_residual", "rel_residual"},
                     rows));
  write_manifest(cfg, out_dir);
}

void emit_farfield(const config::ExperimentConfig& cfg, const FarFieldPattern& pattern,
                   const std::string& out_dir) {
  ensure_dir(out_dir);
  output::write_text_file(out_dir + "/farfield.csv", output::far_field_csv(pattern));
  output::write_text_file(out_dir + "/farfield.svg", output::far_field_polar_svg(pattern));
  write_manifest(cfg, out_dir);
}

void emit_solution(const config::ExperimentConfig& cfg, const ScatteringSolution& solution,
                   const std::string& out_dir) {
  ensure_dir(out_dir);
  output::write_text_file(out_dir + "/solution.json", solution_to_json(solution));
  write_manifest(cfg, out_dir);
}

}  // namespace escat::experiments
