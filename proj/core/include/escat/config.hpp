#pragma once

#include <optional>
#include <string>
#include <vector>

#include "escat/geometry.hpp"
#include "escat/material.hpp"
#include "escat/toml.hpp"
#include "escat/types.hpp"

namespace escat::config {

enum class Kind { Solve, FarField, Betti, Stability, Corner, Verify };

std::string kind_name(Kind kind);

struct ScattererSpec {
  std::vector<Vec2> vertices = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
  std::string profile = "constant";  // "constant" | "holder"
  Real contrast = 0.5;
  Real holder_exponent = 0.5;
  Real holder_coeff = 0.0;
  int anchor_vertex = 0;

  DensityField build() const;
};

struct WaveSpec {
  Real omega = 2.0 * M_PI;
  Real lambda = 1.0;
  Real mu = 1.0;
  Complex alpha1{1.0, 0.0};
  Complex alpha2{0.0, 0.0};
  Real direction = 0.0;  // angle of d; d_perp = rot90(d)

  LameParameters lame() const { return LameParameters(lambda, mu); }
  WaveContext context() const { return wavenumbers(lame(), omega); }
  IncidentWave wave() const { return IncidentWave::plane(alpha1, alpha2, direction, context()); }
};

struct GridSpec {
  int cells_across = 24;
  Real margin = 0.0;
};

struct StabilitySpec {
  std::vector<Real> perturbations = {0.2, 0.141, 0.1, 0.0707, 0.05, 0.0354};
  int move_vertex = 2;
  Real n_constant = 0.0;  // 0 = derive from the coarse-run scattered field
};

struct CornerSpec {
  std::vector<Real> contrasts = {0.1, 0.3, 0.5, 1.0};
  std::vector<std::string> shapes = {"square", "triangle", "pentagon"};
  Real round_fraction = 0.125;  // mollified companion rounding radius fraction
  Real noise_floor = 1e-9;
};

struct BettiSpec {
  Real margin = 0.25;                      // region = support bbox grown by margin
  std::vector<int> cells = {16, 32, 64};   // refinement levels, region resolution
  Real tau_factor = 2.0;                   // probe tau = factor * kappa_s
  int nodes_per_edge = 256;
  std::string probe = "cgo";  // "cgo" | "plane"
  int vertex = 2;             // CGO apex vertex index
};

struct ExperimentConfig {
  Kind kind = Kind::Solve;
  std::uint64_t seed = 1;
  int threads = 0;
  ScattererSpec scatterer;
  std::optional<ScattererSpec> scatterer2;
  WaveSpec wave;
  GridSpec grid;
  int directions = 64;
  geometry::AdmissibilityBounds admissibility{0.2, 1.4, 0.25, 0.05};
  StabilitySpec stability;
  CornerSpec corner;
  BettiSpec betti;

  /// Total validation: every violated field yields one named entry.
  std::vector<std::string> validate() const;
};

/// Parses a table; unparseable values and unknown keys are reported as
/// violations, never thrown past the caller.
ExperimentConfig parse_config(const toml::Table& table, std::vector<std::string>& violations);

ExperimentConfig load_config(const std::string& path, std::vector<std::string>& violations);

/// Canonical echo of the parsed config (deterministic key order), embedded in
/// run manifests so outputs are reproducible artifacts.
std::string config_echo(const ExperimentConfig& config);

}  // namespace escat::config
