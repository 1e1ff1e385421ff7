#pragma once

#include <string>
#include <vector>

#include "escat/config.hpp"
#include "escat/forward.hpp"
#include "escat/identity.hpp"
#include "escat/types.hpp"

namespace escat::experiments {

/// Canonical unit-scale convex shapes for the corner experiment family.
geometry::ConvexPolygon named_shape(const std::string& name);

/// Replaces each corner with a sampled circular arc of the given radius
/// (still a convex polygon; used for the mollified comparison run).
geometry::ConvexPolygon round_corners(const geometry::ConvexPolygon& polygon, Real radius,
                                      int arc_points = 6);

struct StabilityRecord {
  Real d_h = 0.0;
  Real epsilon = 0.0;
  Real double_log_x = 0.0;  // ln ln(N / epsilon)
  bool excluded = false;
  std::string note;
};

struct StabilityResult {
  std::vector<StabilityRecord> records;
  Real n_constant = 0.0;
  Real fit_c = 0.0;      // d_H ~ C (ln ln(N/eps))^(-gamma)
  Real fit_gamma = 0.0;
  Real fit_r2 = 0.0;
  Real rank_correlation = 0.0;
};

StabilityResult run_stability_experiment(const config::ExperimentConfig& cfg);

struct CornerEntry {
  std::string shape;
  Real contrast = 0.0;
  Real norm = 0.0;
  bool admissible = false;
  std::string note;
};

struct CornerResult {
  std::vector<CornerEntry> entries;
  Real control_norm = 0.0;     // rho == 1 sanity run
  Real floor_norm = 0.0;       // min over admissible members
  Real noise_floor = 0.0;
  Real mollified_norm = 0.0;   // corner-rounded companion
  Real mollified_contrast = 0.0;
  std::string mollified_shape;
};

CornerResult run_corner_experiment(const config::ExperimentConfig& cfg);

struct BettiLevel {
  int cells = 0;
  int nodes_per_edge = 0;
  identity::IdentityReport report;
};

struct BettiResult {
  std::string probe;
  Real tau = 0.0;  // 0 for plane-wave probes
  std::vector<BettiLevel> levels;
};

BettiResult run_betti_check(const config::ExperimentConfig& cfg);

/// Run manifest JSON: config echo + library version + seed.
std::string run_manifest(const config::ExperimentConfig& cfg);

void emit_stability(const config::ExperimentConfig& cfg, const StabilityResult& result,
                    const std::string& out_dir);
void emit_corner(const config::ExperimentConfig& cfg, const CornerResult& result,
                 const std::string& out_dir);
void emit_betti(const config::ExperimentConfig& cfg, const BettiResult& result,
                const std::string& out_dir);
void emit_farfield(const config::ExperimentConfig& cfg, const FarFieldPattern& pattern,
                   const std::string& out_dir);
void emit_solution(const config::ExperimentConfig& cfg, const ScatteringSolution& solution,
                   const std::string& out_dir);

}  // namespace escat::experiments
