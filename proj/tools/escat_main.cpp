// Command-line front end: forward solves, far-field extraction, the Betti
// identity check, the stability and corner experiments, and the verify suite.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 4 verification failure.

#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "escat/config.hpp"
#include "escat/experiments.hpp"
#include "escat/output.hpp"
#include "escat/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerification = 4;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
  bool threads_set = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required) {
  auto* config = cmd->add_option("--config", args.config_path, "TOML experiment configuration");
  if (config_required) config->required();
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--seed", args.seed, "RNG seed (overrides the config)")
      ->each([&args](const std::string&) { args.seed_set = true; });
  cmd->add_option("--threads", args.threads, "worker threads (0 = hardware)")
      ->each([&args](const std::string&) { args.threads_set = true; });
}

int load(const CommonArgs& args, escat::config::ExperimentConfig& cfg) {
  std::vector<std::string> violations;
  if (!args.config_path.empty()) {
    cfg = escat::config::load_config(args.config_path, violations);
  } else {
    violations = cfg.validate();
  }
  if (!violations.empty()) {
    std::fprintf(stderr, "configuration invalid:\n");
    for (const auto& v : violations) std::fprintf(stderr, "  - %s\n", v.c_str());
    return kExitConfig;
  }
  if (args.seed_set) cfg.seed = args.seed;
  if (args.threads_set) cfg.threads = args.threads;
  return kExitOk;
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const escat::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.kind() == escat::ErrorKind::Config || e.kind() == escat::ErrorKind::Io
               ? kExitConfig
               : kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"escat: 2D time-harmonic elastic scattering laboratory"};
  app.require_subcommand(1);

  CommonArgs solve_args, far_args, betti_args, stab_args, corner_args, verify_args;
  auto* cmd_solve = app.add_subcommand("solve", "forward solve, write the solution snapshot");
  add_common(cmd_solve, solve_args, true);
  auto* cmd_far = app.add_subcommand("farfield", "forward solve + far-field CSV and polar plot");
  add_common(cmd_far, far_args, true);
  auto* cmd_betti =
      app.add_subcommand("betti-check", "volume/boundary integral identity residuals");
  add_common(cmd_betti, betti_args, true);
  auto* cmd_stab = app.add_subcommand("stability-exp", "shape-stability perturbation sweep");
  add_common(cmd_stab, stab_args, true);
  auto* cmd_corner = app.add_subcommand("corner-exp", "corner non-invisibility lower-bound sweep");
  add_common(cmd_corner, corner_args, true);
  auto* cmd_verify = app.add_subcommand("verify", "run all module invariant suites");
  add_common(cmd_verify, verify_args, false);

  CLI11_PARSE(app, argc, argv);

  using escat::config::ExperimentConfig;

  if (cmd_solve->parsed()) {
    return run_guarded([&]() {
      ExperimentConfig cfg;
      if (const int rc = load(solve_args, cfg); rc != kExitOk) return rc;
      const auto density = cfg.scatterer.build();
      const auto grid = escat::SolverGrid::build(density, cfg.wave.context(),
                                                 cfg.grid.cells_across, cfg.grid.margin);
      for (const auto& warning : grid.warnings)
        std::fprintf(stderr, "warning: %s\n", warning.c_str());
      const auto sol = escat::solve(density, cfg.wave.wave(), cfg.wave.lame(), grid,
                                    {cfg.threads});
      escat::experiments::emit_solution(cfg, sol, solve_args.out_dir);
      std::printf("solved %zu cells, relative residual %s\n", sol.centers.size(),
                  escat::output::format_real(sol.residual_norm).c_str());
      return kExitOk;
    });
  }

  if (cmd_far->parsed()) {
    return run_guarded([&]() {
      ExperimentConfig cfg;
      if (const int rc = load(far_args, cfg); rc != kExitOk) return rc;
      const auto density = cfg.scatterer.build();
      const auto grid = escat::SolverGrid::build(density, cfg.wave.context(),
                                                 cfg.grid.cells_across, cfg.grid.margin);
      const auto sol = escat::solve(density, cfg.wave.wave(), cfg.wave.lame(), grid,
                                    {cfg.threads});
      const auto pattern = escat::far_field(sol, cfg.directions);
      escat::experiments::emit_farfield(cfg, pattern, far_args.out_dir);
      std::printf("far-field norm %s over %d directions\n",
                  escat::output::format_real(escat::far_field_norm(pattern)).c_str(),
                  cfg.directions);
      return kExitOk;
    });
  }

  if (cmd_betti->parsed()) {
    return run_guarded([&]() {
      ExperimentConfig cfg;
      if (const int rc = load(betti_args, cfg); rc != kExitOk) return rc;
      const auto result = escat::experiments::run_betti_check(cfg);
      escat::experiments::emit_betti(cfg, result, betti_args.out_dir);
      for (const auto& level : result.levels)
        std::printf("cells=%d rel_residual=%s\n", level.cells,
                    escat::output::format_real(level.report.rel_residual).c_str());
      return kExitOk;
    });
  }

  if (cmd_stab->parsed()) {
    return run_guarded([&]() {
      ExperimentConfig cfg;
      if (const int rc = load(stab_args, cfg); rc != kExitOk) return rc;
      const auto result = escat::experiments::run_stability_experiment(cfg);
      escat::experiments::emit_stability(cfg, result, stab_args.out_dir);
      std::printf("gamma=%s r2=%s rank_correlation=%s\n",
                  escat::output::format_real(result.fit_gamma).c_str(),
                  escat::output::format_real(result.fit_r2).c_str(),
                  escat::output::format_real(result.rank_correlation).c_str());
      return kExitOk;
    });
  }

  if (cmd_corner->parsed()) {
    return run_guarded([&]() {
      ExperimentConfig cfg;
      if (const int rc = load(corner_args, cfg); rc != kExitOk) return rc;
      const auto result = escat::experiments::run_corner_experiment(cfg);
      escat::experiments::emit_corner(cfg, result, corner_args.out_dir);
      std::printf("floor=%s control=%s mollified=%s\n",
                  escat::output::format_real(result.floor_norm).c_str(),
                  escat::output::format_real(result.control_norm).c_str(),
                  escat::output::format_real(result.mollified_norm).c_str());
      return kExitOk;
    });
  }

  // verify
  return run_guarded([&]() {
    ExperimentConfig cfg;
    if (const int rc = load(verify_args, cfg); rc != kExitOk) return rc;
    const auto report = escat::verify::run_verify_suite(cfg.seed);
    std::error_code ec;
    std::filesystem::create_directories(verify_args.out_dir, ec);
    if (ec) {
      std::fprintf(stderr, "error: cannot create '%s'\n", verify_args.out_dir.c_str());
      return kExitConfig;
    }
    escat::output::write_text_file(verify_args.out_dir + "/verify.json",
                                   escat::verify::report_to_json(report, cfg.seed));
    for (const auto& check : report.checks)
      std::printf("[%s] %s/%s (%s)\n", check.pass ? "PASS" : "FAIL", check.suite.c_str(),
                  check.name.c_str(), check.detail.c_str());
    return report.all_pass ? kExitOk : kExitVerification;
  });
}
