#include "escat/config.hpp"

#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

namespace escat::config {

std::string kind_name(Kind kind) {
  switch (kind) {
    case Kind::Solve: return "solve";
    case Kind::FarField: return "farfield";
    case Kind::Betti: return "betti";
    case Kind::Stability: return "stability";
    case Kind::Corner: return "corner";
    case Kind::Verify: return "verify";
  }
  return "unknown";
}

DensityField ScattererSpec::build() const {
  geometry::ConvexPolygon polygon(vertices);
  if (profile == "holder") {
    const Vec2 anchor = polygon.vertex(anchor_vertex);
    return DensityField::holder_bump(std::move(polygon), contrast, holder_coeff, holder_exponent,
                                     anchor);
  }
  return DensityField::constant(std::move(polygon), contrast);
}

namespace {

std::optional<Kind> kind_from_name(const std::string& name) {
  for (const Kind k : {Kind::Solve, Kind::FarField, Kind::Betti, Kind::Stability, Kind::Corner,
                       Kind::Verify}) {
    if (kind_name(k) == name) return k;
  }
  return std::nullopt;
}

Complex read_complex(const toml::Table& table, const std::string& key, Complex fallback,
                     std::vector<std::string>& violations) {
  if (!table.contains(key)) return fallback;
  const auto& value = table.at(key);
  if (!value.is_array() || value.as_array().size() != 2 || !value.as_array()[0].is_number() ||
      !value.as_array()[1].is_number()) {
    violations.push_back(key + ": expected [re, im]");
    return fallback;
  }
  return {value.as_array()[0].as_float(), value.as_array()[1].as_float()};
}

std::vector<Real> read_real_list(const toml::Table& table, const std::string& key,
                                 std::vector<Real> fallback,
                                 std::vector<std::string>& violations) {
  if (!table.contains(key)) return fallback;
  const auto& value = table.at(key);
  if (!value.is_array()) {
    violations.push_back(key + ": expected an array of numbers");
    return fallback;
  }
  std::vector<Real> out;
  for (const auto& item : value.as_array()) {
    if (!item.is_number()) {
      violations.push_back(key + ": expected an array of numbers");
      return fallback;
    }
    out.push_back(item.as_float());
  }
  return out;
}

std::optional<std::vector<Vec2>> read_vertices(const toml::Table& table, const std::string& key,
                                               std::vector<std::string>& violations) {
  if (!table.contains(key)) return std::nullopt;
  const auto& value = table.at(key);
  if (!value.is_array()) {
    violations.push_back(key + ": expected an array of [x, y] pairs");
    return std::nullopt;
  }
  std::vector<Vec2> out;
  for (const auto& item : value.as_array()) {
    if (!item.is_array() || item.as_array().size() != 2 || !item.as_array()[0].is_number() ||
        !item.as_array()[1].is_number()) {
      violations.push_back(key + ": expected an array of [x, y] pairs");
      return std::nullopt;
    }
    out.emplace_back(item.as_array()[0].as_float(), item.as_array()[1].as_float());
  }
  return out;
}

ScattererSpec read_scatterer(const toml::Table& table, const std::string& prefix,
                             std::vector<std::string>& violations) {
  ScattererSpec spec;
  if (auto v = read_vertices(table, prefix + ".vertices", violations)) spec.vertices = *v;
  spec.profile = table.string_or(prefix + ".profile", spec.profile);
  spec.contrast = table.number_or(prefix + ".contrast", spec.contrast);
  spec.holder_exponent = table.number_or(prefix + ".holder_exponent", spec.holder_exponent);
  spec.holder_coeff = table.number_or(prefix + ".holder_coeff", spec.holder_coeff);
  spec.anchor_vertex = static_cast<int>(table.int_or(prefix + ".anchor_vertex", spec.anchor_vertex));
  return spec;
}

void validate_scatterer(const ScattererSpec& spec, const std::string& prefix,
                        std::vector<std::string>& violations) {
  if (spec.profile != "constant" && spec.profile != "holder")
    violations.push_back(prefix + ".profile: must be \"constant\" or \"holder\"");
  if (!(spec.holder_exponent > 0.0 && spec.holder_exponent <= 1.0))
    violations.push_back(prefix + ".holder_exponent: must lie in (0, 1]");
  if (spec.anchor_vertex < 0 || spec.anchor_vertex >= static_cast<int>(spec.vertices.size()))
    violations.push_back(prefix + ".anchor_vertex: out of range");
  try {
    geometry::ConvexPolygon polygon(spec.vertices);
    (void)polygon;
  } catch (const Error& e) {
    violations.push_back(prefix + ".vertices: " + e.what());
  }
}

}  // namespace

std::vector<std::string> ExperimentConfig::validate() const {
  std::vector<std::string> violations;
  validate_scatterer(scatterer, "scatterer", violations);
  if (scatterer2) validate_scatterer(*scatterer2, "scatterer2", violations);

  if (!(wave.omega > 0.0)) violations.push_back("wave.omega: must be positive");
  if (!(wave.mu > 0.0)) violations.push_back("wave.mu: must be positive");
  if (!(2.0 * wave.lambda + 2.0 * wave.mu > 0.0))
    violations.push_back("wave.lambda: strong convexity needs 2 lambda + 2 mu > 0");
  if (std::abs(wave.alpha1) + std::abs(wave.alpha2) == 0.0)
    violations.push_back("wave.alpha1/alpha2: at least one amplitude must be nonzero");

  if (grid.cells_across < 2) violations.push_back("grid.cells_across: must be >= 2");
  if (grid.margin < 0.0) violations.push_back("grid.margin: must be >= 0");
  if (directions < 8) violations.push_back("farfield.directions: must be >= 8");

  if (!(admissibility.alpha_m > 0.0)) violations.push_back("admissibility.alpha_m: must be > 0");
  if (!(admissibility.alpha_M > admissibility.alpha_m))
    violations.push_back("admissibility.alpha_M: must exceed alpha_m");
  if (!(admissibility.alpha_M < M_PI / 2.0))
    violations.push_back("admissibility.alpha_M: must be < pi/2");
  if (!(admissibility.l0 > 0.0 && admissibility.l0 <= 1.0))
    violations.push_back("admissibility.l0: must lie in (0, 1]");
  if (!(admissibility.eps0 > 0.0)) violations.push_back("admissibility.eps0: must be > 0");

  if (stability.perturbations.empty())
    violations.push_back("stability.perturbations: must be nonempty");
  // zero is allowed: an identical pair lands at the noise floor and is
  // excluded from the fit rather than rejected
  for (const Real t : stability.perturbations)
    if (!(t >= 0.0)) violations.push_back("stability.perturbations: entries must be nonnegative");
  if (stability.move_vertex < 0 ||
      stability.move_vertex >= static_cast<int>(scatterer.vertices.size()))
    violations.push_back("stability.move_vertex: out of range");
  if (stability.n_constant < 0.0) violations.push_back("stability.n_constant: must be >= 0");

  if (corner.contrasts.empty()) violations.push_back("corner.contrasts: must be nonempty");
  for (const Real c : corner.contrasts)
    if (c == 0.0) violations.push_back("corner.contrasts: zero contrast is the control, not a member");
  const std::set<std::string> known_shapes = {"square", "triangle", "pentagon"};
  for (const auto& s : corner.shapes)
    if (!known_shapes.count(s))
      violations.push_back("corner.shapes: unknown shape \"" + s + "\"");
  if (!(corner.round_fraction > 0.0 && corner.round_fraction < 0.5))
    violations.push_back("corner.round_fraction: must lie in (0, 0.5)");

  if (!(betti.margin > 0.0)) violations.push_back("betti.margin: must be positive");
  if (betti.cells.empty()) violations.push_back("betti.cells: must be nonempty");
  for (const int c : betti.cells)
    if (c < 4) violations.push_back("betti.cells: levels must be >= 4");
  if (!(betti.tau_factor > 1.0)) violations.push_back("betti.tau_factor: must exceed 1");
  if (betti.nodes_per_edge < 8) violations.push_back("betti.nodes_per_edge: must be >= 8");
  if (betti.probe != "cgo" && betti.probe != "plane")
    violations.push_back("betti.probe: must be \"cgo\" or \"plane\"");
  if (betti.vertex < 0 || betti.vertex >= static_cast<int>(scatterer.vertices.size()))
    violations.push_back("betti.vertex: out of range");

  return violations;
}

ExperimentConfig parse_config(const toml::Table& table, std::vector<std::string>& violations) {
  ExperimentConfig cfg;
  if (table.contains("kind")) {
    const auto kind = kind_from_name(table.at("kind").as_string());
    if (kind) {
      cfg.kind = *kind;
    } else {
      violations.push_back("kind: unknown experiment kind");
    }
  }
  cfg.seed = static_cast<std::uint64_t>(table.int_or("seed", 1));
  cfg.threads = static_cast<int>(table.int_or("threads", 0));

  cfg.scatterer = read_scatterer(table, "scatterer", violations);
  for (const auto& [key, value] : table.entries()) {
    (void)value;
    if (key.rfind("scatterer2.", 0) == 0) {
      cfg.scatterer2 = read_scatterer(table, "scatterer2", violations);
      break;
    }
  }

  cfg.wave.omega = table.number_or("wave.omega", cfg.wave.omega);
  cfg.wave.lambda = table.number_or("wave.lambda", cfg.wave.lambda);
  cfg.wave.mu = table.number_or("wave.mu", cfg.wave.mu);
  cfg.wave.alpha1 = read_complex(table, "wave.alpha1", cfg.wave.alpha1, violations);
  cfg.wave.alpha2 = read_complex(table, "wave.alpha2", cfg.wave.alpha2, violations);
  cfg.wave.direction = table.number_or("wave.direction", cfg.wave.direction);

  cfg.grid.cells_across = static_cast<int>(table.int_or("grid.cells_across", cfg.grid.cells_across));
  cfg.grid.margin = table.number_or("grid.margin", cfg.grid.margin);
  cfg.directions = static_cast<int>(table.int_or("farfield.directions", cfg.directions));

  cfg.admissibility.alpha_m = table.number_or("admissibility.alpha_m", cfg.admissibility.alpha_m);
  cfg.admissibility.alpha_M = table.number_or("admissibility.alpha_M", cfg.admissibility.alpha_M);
  cfg.admissibility.l0 = table.number_or("admissibility.l0", cfg.admissibility.l0);
  cfg.admissibility.eps0 = table.number_or("admissibility.eps0", cfg.admissibility.eps0);

  cfg.stability.perturbations =
      read_real_list(table, "stability.perturbations", cfg.stability.perturbations, violations);
  cfg.stability.move_vertex =
      static_cast<int>(table.int_or("stability.move_vertex", cfg.stability.move_vertex));
  cfg.stability.n_constant = table.number_or("stability.n_constant", cfg.stability.n_constant);

  cfg.corner.contrasts = read_real_list(table, "corner.contrasts", cfg.corner.contrasts, violations);
  if (table.contains("corner.shapes")) {
    const auto& value = table.at("corner.shapes");
    if (value.is_array()) {
      cfg.corner.shapes.clear();
      for (const auto& item : value.as_array()) {
        if (item.is_string()) {
          cfg.corner.shapes.push_back(item.as_string());
        } else {
          violations.push_back("corner.shapes: expected an array of strings");
        }
      }
    } else {
      violations.push_back("corner.shapes: expected an array of strings");
    }
  }
  cfg.corner.round_fraction = table.number_or("corner.round_fraction", cfg.corner.round_fraction);
  cfg.corner.noise_floor = table.number_or("corner.noise_floor", cfg.corner.noise_floor);

  cfg.betti.margin = table.number_or("betti.margin", cfg.betti.margin);
  if (table.contains("betti.cells")) {
    const auto levels = read_real_list(table, "betti.cells", {}, violations);
    cfg.betti.cells.clear();
    for (const Real level : levels) cfg.betti.cells.push_back(static_cast<int>(level));
  }
  cfg.betti.tau_factor = table.number_or("betti.tau_factor", cfg.betti.tau_factor);
  cfg.betti.nodes_per_edge =
      static_cast<int>(table.int_or("betti.nodes_per_edge", cfg.betti.nodes_per_edge));
  cfg.betti.probe = table.string_or("betti.probe", cfg.betti.probe);
  cfg.betti.vertex = static_cast<int>(table.int_or("betti.vertex", cfg.betti.vertex));

  const auto more = cfg.validate();
  violations.insert(violations.end(), more.begin(), more.end());
  return cfg;
}

ExperimentConfig load_config(const std::string& path, std::vector<std::string>& violations) {
  toml::Table table;
  try {
    table = toml::Table::parse_file(path);
  } catch (const Error& e) {
    violations.push_back(e.what());
    return ExperimentConfig{};
  }
  return parse_config(table, violations);
}

std::string config_echo(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["kind"] = kind_name(cfg.kind);
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  auto scatterer_json = [](const ScattererSpec& s) {
    nlohmann::ordered_json out;
    out["vertices"] = nlohmann::json::array();
    for (const auto& v : s.vertices) out["vertices"].push_back({v.x(), v.y()});
    out["profile"] = s.profile;
    out["contrast"] = s.contrast;
    out["holder_exponent"] = s.holder_exponent;
    out["holder_coeff"] = s.holder_coeff;
    out["anchor_vertex"] = s.anchor_vertex;
    return out;
  };
  j["scatterer"] = scatterer_json(cfg.scatterer);
  if (cfg.scatterer2) j["scatterer2"] = scatterer_json(*cfg.scatterer2);
  j["wave"] = {{"omega", cfg.wave.omega},
               {"lambda", cfg.wave.lambda},
               {"mu", cfg.wave.mu},
               {"alpha1", {cfg.wave.alpha1.real(), cfg.wave.alpha1.imag()}},
               {"alpha2", {cfg.wave.alpha2.real(), cfg.wave.alpha2.imag()}},
               {"direction", cfg.wave.direction}};
  j["grid"] = {{"cells_across", cfg.grid.cells_across}, {"margin", cfg.grid.margin}};
  j["farfield"] = {{"directions", cfg.directions}};
  j["admissibility"] = {{"alpha_m", cfg.admissibility.alpha_m},
                        {"alpha_M", cfg.admissibility.alpha_M},
                        {"l0", cfg.admissibility.l0},
                        {"eps0", cfg.admissibility.eps0}};
  j["stability"] = {{"perturbations", cfg.stability.perturbations},
                    {"move_vertex", cfg.stability.move_vertex},
                    {"n_constant", cfg.stability.n_constant}};
  j["corner"] = {{"contrasts", cfg.corner.contrasts},
                 {"shapes", cfg.corner.shapes},
                 {"round_fraction", cfg.corner.round_fraction},
                 {"noise_floor", cfg.corner.noise_floor}};
  j["betti"] = {{"margin", cfg.betti.margin},       {"cells", cfg.betti.cells},
                {"tau_factor", cfg.betti.tau_factor}, {"nodes_per_edge", cfg.betti.nodes_per_edge},
                {"probe", cfg.betti.probe},           {"vertex", cfg.betti.vertex}};
  return j.dump(2);
}

}  // namespace escat::config
