#include "escat/forward.hpp"

#include <cmath>
#include <thread>

#include <lapacke.h>
#include <nlohmann/json.hpp>

namespace escat {

namespace {

void parallel_rows(int n, int threads, const std::function<void(int)>& body) {
  int count = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  count = std::max(1, std::min(count, n));
  if (count == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(count);
  for (int t = 0; t < count; ++t) {
    pool.emplace_back([=, &body]() {
      for (int i = t; i < n; i += count) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

SolverGrid SolverGrid::build(const DensityField& scatterer, const WaveContext& ctx,
                             int cells_across, Real margin) {
  require(margin >= 0.0, ErrorKind::Parameter, "grid: margin must be nonnegative");
  auto [lo, hi] = scatterer.support.bbox();
  lo -= Vec2(margin, margin);
  hi += Vec2(margin, margin);
  return build_in_box(scatterer, ctx, lo, hi, cells_across);
}

SolverGrid SolverGrid::build_in_box(const DensityField& scatterer, const WaveContext& ctx,
                                    const Vec2& lo, const Vec2& hi, int cells_across) {
  require(cells_across >= 2, ErrorKind::Parameter, "grid: needs at least 2 cells across");
  require(hi.x() > lo.x() && hi.y() > lo.y(), ErrorKind::Parameter, "grid: empty box");
  SolverGrid grid;
  const Vec2 extent = hi - lo;
  grid.cell_size = std::max(extent.x(), extent.y()) / cells_across;
  grid.nx = std::max(1, static_cast<int>(std::ceil(extent.x() / grid.cell_size - 1e-12)));
  grid.ny = std::max(1, static_cast<int>(std::ceil(extent.y() / grid.cell_size - 1e-12)));
  grid.lo = lo;
  grid.hi = lo + grid.cell_size * Vec2(grid.nx, grid.ny);

  const Real min_wavelength = 2.0 * M_PI / std::max(ctx.kappa_p, ctx.kappa_s);
  if (grid.cell_size > min_wavelength / 10.0)
    grid.warnings.push_back("cell size exceeds a tenth of the shortest wavelength");

  grid.cells.resize(static_cast<std::size_t>(grid.nx) * grid.ny);
  const Real area_floor = 1e-12 * grid.cell_size * grid.cell_size;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const Vec2 cell_lo = lo + grid.cell_size * Vec2(i, j);
      const Vec2 cell_hi = cell_lo + Vec2(grid.cell_size, grid.cell_size);
      SolverCell cell;
      cell.center = 0.5 * (cell_lo + cell_hi);
      cell.inside = scatterer.support.contains(cell.center);
      const auto clip = scatterer.support.clip_box(cell_lo, cell_hi);
      cell.centroid = clip.centroid;
      if (clip.area > area_floor) cell.weight = clip.area;
      const int idx = j * grid.nx + i;
      grid.cells[idx] = cell;
      if (cell.weight > 0.0) grid.active.push_back(idx);
    }
  }
  return grid;
}

ScatteringSolution solve(const DensityField& scatterer, const IncidentWave& wave,
                         const LameParameters& params, const SolverGrid& grid,
                         const SolveOptions& options) {
  const int n_cells = static_cast<int>(grid.active.size());
  require(n_cells > 0, ErrorKind::Parameter, "solve: grid has no cells overlapping the support");
  const int n = 2 * n_cells;
  const WaveContext& ctx = wave.context;
  {
    const WaveContext derived = wavenumbers(params, ctx.omega);
    require(std::abs(derived.kappa_s - ctx.kappa_s) < 1e-9 * ctx.kappa_s &&
                std::abs(derived.kappa_p - ctx.kappa_p) < 1e-9 * ctx.kappa_p,
            ErrorKind::Parameter, "solve: wave context disagrees with the Lame parameters");
  }
  const Real w2 = ctx.omega * ctx.omega;

  ScatteringSolution sol;
  sol.params = params;
  sol.context = ctx;
  sol.alpha1 = wave.alpha1;
  sol.alpha2 = wave.alpha2;
  sol.d = wave.d;
  sol.d_perp = wave.d_perp;
  sol.support_vertices = scatterer.support.vertices();
  sol.cell_size = grid.cell_size;
  sol.grid_lo = grid.lo;
  sol.grid_hi = grid.hi;
  sol.centers.reserve(n_cells);
  sol.weights.reserve(n_cells);
  sol.contrasts.reserve(n_cells);
  for (const int idx : grid.active) {
    const auto& cell = grid.cells[idx];
    sol.centers.push_back(cell.center);
    sol.weights.push_back(cell.weight);
    // rho - 1 at the clipped-region centroid; value_at guards points that sit
    // exactly on the boundary after clipping roundoff
    sol.contrasts.push_back(scatterer.value_at(cell.centroid) - 1.0);
  }

  // Cells live on one lattice, so the kernel depends on the index offset
  // only; precomputing the (2nx-1)(2ny-1) distinct blocks turns assembly
  // from n^2 Hankel evaluations into n^2 block copies.
  std::vector<std::pair<int, int>> lattice(n_cells);
  for (int a = 0; a < n_cells; ++a) {
    const int idx = grid.active[a];
    lattice[a] = {idx % grid.nx, idx / grid.nx};
  }
  const int off_nx = 2 * grid.nx - 1;
  const int off_ny = 2 * grid.ny - 1;
  std::vector<CMat2> kernel(static_cast<std::size_t>(off_nx) * off_ny);
  parallel_rows(off_ny, options.threads, [&](int row) {
    const int dj = row - (grid.ny - 1);
    for (int di = -(grid.nx - 1); di <= grid.nx - 1; ++di) {
      if (di == 0 && dj == 0) continue;
      const Vec2 diff = -grid.cell_size * Vec2(di, dj);
      kernel[static_cast<std::size_t>(row) * off_nx + (di + grid.nx - 1)] =
          green_tensor(diff, Vec2::Zero(), params, ctx);
    }
  });

  Eigen::MatrixXcd matrix(n, n);
  parallel_rows(n_cells, options.threads, [&](int j) {
    for (int k = 0; k < n_cells; ++k) {
      CMat2 block;
      if (k == j) {
        const Real a = std::sqrt(sol.weights[j] / M_PI);
        block = CMat2::Identity() -
                w2 * sol.contrasts[j] * green_disk_integral(a, params, ctx) * CMat2::Identity();
      } else {
        const int di = lattice[k].first - lattice[j].first;
        const int dj = lattice[k].second - lattice[j].second;
        block = -w2 * sol.contrasts[k] * sol.weights[k] *
                kernel[static_cast<std::size_t>(dj + grid.ny - 1) * off_nx + (di + grid.nx - 1)];
      }
      matrix.block<2, 2>(2 * j, 2 * k) = block;
    }
  });

  Eigen::VectorXcd rhs(n);
  for (int j = 0; j < n_cells; ++j) rhs.segment<2>(2 * j) = incident_field(wave, sol.centers[j]);
  const Real rhs_norm = rhs.norm();

  const Real anorm = matrix.cwiseAbs().colwise().sum().maxCoeff();
  Eigen::MatrixXcd lu = matrix;
  std::vector<lapack_int> ipiv(n);
  lapack_int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n,
                                   reinterpret_cast<lapack_complex_double*>(lu.data()), n,
                                   ipiv.data());
  require(info == 0, ErrorKind::Solver, "solve: LU factorization failed (singular system)");

  auto back_solve = [&](Eigen::VectorXcd& b) {
    const lapack_int st = LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', n, 1,
                                         reinterpret_cast<const lapack_complex_double*>(lu.data()),
                                         n, ipiv.data(),
                                         reinterpret_cast<lapack_complex_double*>(b.data()), n);
    require(st == 0, ErrorKind::Solver, "solve: triangular solve failed");
  };

  Eigen::VectorXcd x = rhs;
  back_solve(x);
  // one step of iterative refinement
  Eigen::VectorXcd residual = rhs - matrix * x;
  Eigen::VectorXcd correction = residual;
  back_solve(correction);
  x += correction;
  residual = rhs - matrix * x;
  sol.residual_norm = residual.norm() / std::max(rhs_norm, 1e-300);

  if (sol.residual_norm > 1e-8) {
    Real rcond = 0.0;
    LAPACKE_zgecon(LAPACK_COL_MAJOR, '1', n,
                   reinterpret_cast<const lapack_complex_double*>(lu.data()), n, anorm, &rcond);
    fail(ErrorKind::Solver, "solve: near-resonant system, relative residual " +
                  std::to_string(sol.residual_norm) + ", rcond estimate " + std::to_string(rcond));
  }

  sol.total.resize(n_cells);
  for (int j = 0; j < n_cells; ++j) sol.total[j] = x.segment<2>(2 * j);
  return sol;
}

namespace {

CVec2 scattered_sum(const ScatteringSolution& sol, const Vec2& x) {
  const Real w2 = sol.context.omega * sol.context.omega;
  CVec2 sum = CVec2::Zero();
  const int n = static_cast<int>(sol.centers.size());
  for (int k = 0; k < n; ++k) {
    if (sol.contrasts[k] == 0.0) continue;
    sum += sol.contrasts[k] * sol.weights[k] *
           (green_tensor(x, sol.centers[k], sol.params, sol.context) * sol.total[k]);
  }
  return w2 * sum;
}

bool inside_support(const ScatteringSolution& sol, const Vec2& x) {
  const auto& v = sol.support_vertices;
  const int n = static_cast<int>(v.size());
  for (int i = 0; i < n; ++i) {
    if (cross2(v[(i + 1) % n] - v[i], x - v[i]) < -1e-14) return false;
  }
  return true;
}

}  // namespace

CVec2 scattered_near_field(const ScatteringSolution& sol, const Vec2& x) {
  require(!inside_support(sol, x), ErrorKind::Domain,
          "scattered_near_field: x lies inside the support, use total_field_at");
  return scattered_sum(sol, x);
}

CVec2 total_field_at(const ScatteringSolution& sol, const Vec2& x) {
  return incident_field(sol.wave(), x) + scattered_sum(sol, x);
}

FarFieldPattern far_field(const ScatteringSolution& sol, int directions) {
  require(directions >= 8, ErrorKind::Parameter, "far_field: needs at least 8 directions");
  FarFieldPattern pattern;
  pattern.angles.resize(directions);
  pattern.u_p.resize(directions);
  pattern.u_s.resize(directions);

  const Real kp = sol.context.kappa_p;
  const Real ks = sol.context.kappa_s;
  const Complex phase = std::exp(kImag * (M_PI / 4.0));
  const Complex cp = phase * std::sqrt(2.0 / (M_PI * kp)) * kp * kp / 4.0;
  const Complex cs = phase * std::sqrt(2.0 / (M_PI * ks)) * ks * ks / 4.0;

  const int n = static_cast<int>(sol.centers.size());
  for (int m = 0; m < directions; ++m) {
    const Real angle = 2.0 * M_PI * m / directions;
    pattern.angles[m] = angle;
    const Vec2 xhat(std::cos(angle), std::sin(angle));
    CVec2 vp = CVec2::Zero();
    CVec2 vs = CVec2::Zero();
    for (int k = 0; k < n; ++k) {
      if (sol.contrasts[k] == 0.0) continue;
      const CVec2 moment = sol.contrasts[k] * sol.weights[k] * sol.total[k];
      vp += std::exp(-kImag * kp * xhat.dot(sol.centers[k])) * moment;
      vs += std::exp(-kImag * ks * xhat.dot(sol.centers[k])) * moment;
    }
    const CVec2 xc = xhat.cast<Complex>();
    pattern.u_p[m] = cp * bdot(vp, xhat) * xc;
    pattern.u_s[m] = cs * (vs - bdot(vs, xhat) * xc);
  }
  return pattern;
}

Real far_field_norm(const FarFieldPattern& pattern) {
  const int m = static_cast<int>(pattern.angles.size());
  Real sum = 0.0;
  for (int i = 0; i < m; ++i) sum += pattern.u_p[i].squaredNorm() + pattern.u_s[i].squaredNorm();
  return std::sqrt(sum * 2.0 * M_PI / m);
}

Real far_field_distance(const FarFieldPattern& a, const FarFieldPattern& b) {
  require(a.angles.size() == b.angles.size(), ErrorKind::Parameter,
          "far_field_distance: direction counts differ");
  const int m = static_cast<int>(a.angles.size());
  Real sum = 0.0;
  for (int i = 0; i < m; ++i)
    sum += (a.u_p[i] - b.u_p[i]).squaredNorm() + (a.u_s[i] - b.u_s[i]).squaredNorm();
  return std::sqrt(sum * 2.0 * M_PI / m);
}

namespace {

nlohmann::json complex_to_json(const Complex& z) { return {z.real(), z.imag()}; }

Complex complex_from_json(const nlohmann::json& j) { return {j.at(0).get<Real>(), j.at(1).get<Real>()}; }

}  // namespace

std::string solution_to_json(const ScatteringSolution& sol) {
  nlohmann::ordered_json j;
  j["lambda"] = sol.params.lambda;
  j["mu"] = sol.params.mu;
  j["omega"] = sol.context.omega;
  j["alpha1"] = complex_to_json(sol.alpha1);
  j["alpha2"] = complex_to_json(sol.alpha2);
  j["d"] = {sol.d.x(), sol.d.y()};
  j["d_perp"] = {sol.d_perp.x(), sol.d_perp.y()};
  j["cell_size"] = sol.cell_size;
  j["grid_lo"] = {sol.grid_lo.x(), sol.grid_lo.y()};
  j["grid_hi"] = {sol.grid_hi.x(), sol.grid_hi.y()};
  j["residual_norm"] = sol.residual_norm;
  j["support"] = nlohmann::json::array();
  for (const auto& v : sol.support_vertices) j["support"].push_back({v.x(), v.y()});
  j["cells"] = nlohmann::json::array();
  const int n = static_cast<int>(sol.centers.size());
  for (int k = 0; k < n; ++k) {
    nlohmann::ordered_json cell;
    cell["c"] = {sol.centers[k].x(), sol.centers[k].y()};
    cell["w"] = sol.weights[k];
    cell["q"] = sol.contrasts[k];
    cell["u"] = {sol.total[k].x().real(), sol.total[k].x().imag(), sol.total[k].y().real(),
                 sol.total[k].y().imag()};
    j["cells"].push_back(std::move(cell));
  }
  return j.dump(2);
}

ScatteringSolution solution_from_json(const std::string& text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    ScatteringSolution sol;
    sol.params = LameParameters(j.at("lambda").get<Real>(), j.at("mu").get<Real>());
    sol.context = wavenumbers(sol.params, j.at("omega").get<Real>());
    sol.alpha1 = complex_from_json(j.at("alpha1"));
    sol.alpha2 = complex_from_json(j.at("alpha2"));
    sol.d = Vec2(j.at("d").at(0).get<Real>(), j.at("d").at(1).get<Real>());
    sol.d_perp = Vec2(j.at("d_perp").at(0).get<Real>(), j.at("d_perp").at(1).get<Real>());
    sol.cell_size = j.at("cell_size").get<Real>();
    sol.grid_lo = Vec2(j.at("grid_lo").at(0).get<Real>(), j.at("grid_lo").at(1).get<Real>());
    sol.grid_hi = Vec2(j.at("grid_hi").at(0).get<Real>(), j.at("grid_hi").at(1).get<Real>());
    sol.residual_norm = j.at("residual_norm").get<Real>();
    for (const auto& v : j.at("support"))
      sol.support_vertices.emplace_back(v.at(0).get<Real>(), v.at(1).get<Real>());
    for (const auto& cell : j.at("cells")) {
      sol.centers.emplace_back(cell.at("c").at(0).get<Real>(), cell.at("c").at(1).get<Real>());
      sol.weights.push_back(cell.at("w").get<Real>());
      sol.contrasts.push_back(cell.at("q").get<Real>());
      const auto& u = cell.at("u");
      sol.total.emplace_back(Complex(u.at(0).get<Real>(), u.at(1).get<Real>()),
                             Complex(u.at(2).get<Real>(), u.at(3).get<Real>()));
    }
    return sol;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Io, std::string("solution_from_json: ") + e.what());
  }
}

}  // namespace escat
