#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "cutfem/config.hpp"
#include "cutfem/geometry.hpp"
#include "cutfem/postprocess.hpp"
#include "cutfem/problem.hpp"
#include "cutfem/solver.hpp"
#include "cutfem/space.hpp"

namespace cutfem {

/// Mesh, classification and space of one level. Not movable: the space
/// refers to the other two members.
struct Discretization {
  Mesh mesh;
  CutClassification classification;
  std::optional<FeSpace> space;

  Discretization() = default;
  Discretization(const Discretization&) = delete;
  Discretization& operator=(const Discretization&) = delete;
};

/// Level l uses (2^l n0) x (2^l n0) cells, n0 fixed by base_h, so h halves exactly.
std::unique_ptr<Discretization> discretize(const ManufacturedProblem& problem, double base_h, int level);

/// a_h + j_h and the right-hand side (load plus Nitsche data terms if the
/// problem has nonhomogeneous Dirichlet data).
struct LinearSystem {
  SparseOperator stabilised;
  VectorXd rhs;
};
LinearSystem assemble_system(const FeSpace& space, const ManufacturedProblem& problem, const ProblemParams& params);

struct LevelResult {
  int level = 0;
  Vec2 center = Vec2::Zero();
  ErrorRecord errors;
  NewtonReport newton;
  std::size_t n_triangles = 0;
  std::size_t n_active = 0;
  std::size_t n_cut = 0;
  std::size_t n_ghost_faces = 0;
  int n_dofs = 0;
};

struct LevelRun {
  std::unique_ptr<Discretization> disc;
  FeFunction solution;
  LevelResult result;
};

/// Builds, assembles and solves one level with the disc centred at `center`.
/// Throws SolverError (with the level in the message) if Newton fails.
LevelRun solve_level(const RunConfig& config, int level, const Vec2& center);

/// solve_level at the configured centre, writing solution_L.vtk (if enabled),
/// newton_L.csv and errors_L.json to output_dir.
LevelResult run_single(const RunConfig& config, int level);

struct ConvergenceReport {
  ConvergenceTable table;
  std::vector<LevelResult> levels;
  bool bands_pass = false;
};

/// Solves every level, writes table.csv, summary.json and newton_L.csv to
/// `output_dir` with an optional file-name suffix. A failing level writes the
/// partial table and rethrows.
ConvergenceReport run_convergence(const RunConfig& config, const std::string& suffix = "");

bool rates_within_bands(const RunConfig& config, const ConvergenceTable& table);

/// Seeded random centre offsets, uniform in [-cell, cell]^2.
std::vector<Vec2> translation_offsets(int count, int seed, double cell);

/// Cell width of the background grid at `level`.
double cell_size(const RunConfig& config, int level);

} // namespace cutfem
