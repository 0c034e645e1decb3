#include "cutfem/driver.hpp"

#include <cmath>
#include <filesystem>
#include <random>

#include <json.hpp>

#include "cutfem/assembly.hpp"
#include "cutfem/errors.hpp"
#include "cutfem/io.hpp"

namespace cutfem {

namespace {

std::string level_path(const RunConfig& config, const std::string& stem, int level, const std::string& ext,
                       const std::string& suffix = "") {
  return (std::filesystem::path(config.output_dir) / (stem + "_" + std::to_string(level) + suffix + ext)).string();
}

nlohmann::ordered_json errors_json(const ErrorRecord& e) {
  nlohmann::ordered_json j;
  j["h"] = e.h;
  j["err_l2"] = e.err_l2;
  j["err_h1_semi"] = e.err_h1_semi;
  j["err_h1"] = e.err_h1;
  j["err_star"] = e.err_star;
  j["boundary_term"] = e.boundary_term;
  if (!std::isnan(e.j_term)) {
    j["j_term"] = e.j_term;
    j["err_h_norm"] = e.err_h_norm;
  }
  return j;
}

nlohmann::ordered_json level_json(const LevelResult& r) {
  nlohmann::ordered_json j;
  j["level"] = r.level;
  j["center"] = {r.center.x(), r.center.y()};
  j["n_triangles"] = r.n_triangles;
  j["n_active"] = r.n_active;
  j["n_cut"] = r.n_cut;
  j["n_ghost_faces"] = r.n_ghost_faces;
  j["n_dofs"] = r.n_dofs;
  j["newton_iterations"] = r.newton.iterations;
  j["newton_converged"] = r.newton.converged;
  j["errors"] = errors_json(r.errors);
  return j;
}

std::string partial_table_csv(const std::vector<ErrorRecord>& records) {
  if (records.size() >= 2) return convergence_csv(compute_eoc(records));
  std::string out = "h,err_h1,eoc_h1,err_l2,eoc_l2,err_star,eoc_star\n";
  char buf[160];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%.10e,%.10e,,%.10e,,%.10e,\n", r.h, r.err_h1, r.err_l2, r.err_star);
    out += buf;
  }
  return out;
}

} // namespace

std::unique_ptr<Discretization> discretize(const ManufacturedProblem& problem, double base_h, int level) {
  if (level < 0) throw ValidationError("level must be non-negative");
  const Mesh coarse = build_background_mesh(problem.background, base_h);
  auto disc = std::make_unique<Discretization>();
  disc->mesh = build_structured_mesh(problem.background, coarse.nx << level, coarse.ny << level);
  disc->classification = classify_elements(disc->mesh, problem.phi);
  disc->space.emplace(disc->mesh, disc->classification);
  return disc;
}

double cell_size(const RunConfig& config, int level) {
  const auto problem = make_problem(config.problem, config.p);
  const Mesh coarse = build_background_mesh(problem.background, config.base_h);
  return problem.background.width() / (coarse.nx << level);
}

LinearSystem assemble_system(const FeSpace& space, const ManufacturedProblem& problem, const ProblemParams& params) {
  LinearSystem sys;
  sys.stabilised = assemble_ah(space, params) + assemble_ghost_penalty(space, params);
  sys.rhs = assemble_load(space, problem.f2, params);
  if (problem.dirichlet) sys.rhs += assemble_nitsche_data(space, problem.dirichlet, params);
  return sys;
}

LevelRun solve_level(const RunConfig& config, int level, const Vec2& center) {
  config.validate();
  const auto problem = make_problem(config.problem, config.p, center);
  LevelRun run;
  try {
    run.disc = discretize(problem, config.base_h, level);
  } catch (const GeometryError& e) {
    throw GeometryError("level " + std::to_string(level) + ": " + e.what());
  }
  const FeSpace& space = *run.disc->space;
  const ProblemParams params = config.problem_params(run.disc->mesh.h_max);
  params.validate();

  const LinearSystem sys = assemble_system(space, problem, params);
  NewtonResult newton;
  try {
    newton = newton_solve(sys.stabilised, sys.rhs, params, FeFunction(space), config.newton_options());
  } catch (const SolverError& e) {
    throw SolverError("level " + std::to_string(level) + ": " + e.what());
  }
  run.solution = std::move(newton.solution);

  LevelResult& r = run.result;
  r.level = level;
  r.center = center;
  r.newton = std::move(newton.report);
  r.errors = error_norms(problem, run.solution, params, {config.mesh_norm_diagnostic});
  r.n_triangles = run.disc->mesh.num_triangles();
  r.n_active = run.disc->classification.active.size();
  r.n_cut = run.disc->classification.cut_set.size();
  r.n_ghost_faces = run.disc->classification.ghost_faces.size();
  r.n_dofs = space.n_dofs();
  return run;
}

LevelResult run_single(const RunConfig& config, int level) {
  config.validate();
  std::filesystem::create_directories(config.output_dir);
  LevelRun run = solve_level(config, level, Vec2(config.center_x, config.center_y));
  write_file(level_path(config, "newton", level, ".csv"), newton_trace_csv(run.result.newton));
  if (!run.result.newton.converged)
    throw SolverError("level " + std::to_string(level) + ": Newton did not converge");
  if (config.write_vtk) write_file(level_path(config, "solution", level, ".vtk"), vtk_legacy(run.solution));
  write_file(level_path(config, "errors", level, ".json"), level_json(run.result).dump(2) + "\n");
  return run.result;
}

bool rates_within_bands(const RunConfig& config, const ConvergenceTable& t) {
  auto in = [](double v, double lo, double hi) { return v >= lo && v <= hi; };
  return in(t.mean_eoc_h1, config.band_h1_min, config.band_h1_max) &&
         in(t.mean_eoc_l2, config.band_l2_min, config.band_l2_max) &&
         in(t.mean_eoc_star, config.band_star_min, config.band_star_max);
}

ConvergenceReport run_convergence(const RunConfig& config, const std::string& suffix) {
  config.validate();
  if (config.level_count() < 2) throw ValidationError("convergence study needs at least two levels");
  std::filesystem::create_directories(config.output_dir);
  const auto out = [&](const std::string& name) {
    return (std::filesystem::path(config.output_dir) / name).string();
  };

  ConvergenceReport report;
  std::vector<ErrorRecord> records;
  const Vec2 center(config.center_x, config.center_y);
  for (int level = 0; level < config.level_count(); ++level) {
    try {
      LevelRun run = solve_level(config, level, center);
      write_file(level_path(config, "newton", level, ".csv", suffix), newton_trace_csv(run.result.newton));
      if (!run.result.newton.converged)
        throw SolverError("level " + std::to_string(level) + ": Newton did not converge");
      if (config.write_vtk)
        write_file(level_path(config, "solution", level, ".vtk", suffix), vtk_legacy(run.solution));
      records.push_back(run.result.errors);
      report.levels.push_back(run.result);
    } catch (...) {
      write_file(out("table" + suffix + ".csv"), partial_table_csv(records));
      throw;
    }
  }

  report.table = compute_eoc(records);
  report.bands_pass = rates_within_bands(config, report.table);
  write_file(out("table" + suffix + ".csv"), convergence_csv(report.table));

  nlohmann::ordered_json summary;
  summary["problem"] = config.problem;
  summary["p"] = config.p;
  summary["mean_eoc_h1"] = report.table.mean_eoc_h1;
  summary["mean_eoc_l2"] = report.table.mean_eoc_l2;
  summary["mean_eoc_star"] = report.table.mean_eoc_star;
  summary["bands"] = {{"h1", {config.band_h1_min, config.band_h1_max}},
                      {"l2", {config.band_l2_min, config.band_l2_max}},
                      {"star", {config.band_star_min, config.band_star_max}}};
  summary["pass"] = report.bands_pass;
  for (const auto& l : report.levels) summary["levels"].push_back(level_json(l));
  write_file(out("summary" + suffix + ".json"), summary.dump(2) + "\n");
  return report;
}

std::vector<Vec2> translation_offsets(int count, int seed, double cell) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  std::uniform_real_distribution<double> dist(-cell, cell);
  std::vector<Vec2> offsets;
  for (int i = 0; i < count; ++i) {
    const double x = dist(rng);
    const double y = dist(rng);
    offsets.emplace_back(x, y);
  }
  return offsets;
}

} // namespace cutfem
