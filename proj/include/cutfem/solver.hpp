#pragma once

#include <memory>
#include <vector>

#include "cutfem/assembly.hpp"
#include "cutfem/space.hpp"
#include "cutfem/types.hpp"

namespace cutfem {

enum class LinearMethod { Direct, ConjugateGradient };

struct LinearSolveOptions {
  double tol = 1e-12; ///< required ‖Ax - b‖ / ‖b‖
  LinearMethod method = LinearMethod::Direct;
  int refinement_steps = 3;
};

/// Solves repeated systems sharing one sparsity pattern. The direct path uses
/// a sparse LDL^T factorisation (with an LU fallback if it breaks down) plus
/// iterative refinement; the CG path uses a Jacobi preconditioner and an
/// iteration cap of 20 n. Throws SolverError if the tolerance is not met.
class LinearSolver {
public:
  explicit LinearSolver(LinearSolveOptions options = {});
  ~LinearSolver();
  LinearSolver(LinearSolver&&) noexcept;
  LinearSolver& operator=(LinearSolver&&) noexcept;

  VectorXd solve(const SparseOperator& a, const VectorXd& b);

private:
  struct Impl;
  LinearSolveOptions options_;
  std::unique_ptr<Impl> impl_;
};

VectorXd linear_solve(const SparseOperator& a, const VectorXd& b, const LinearSolveOptions& options = {});

struct NewtonOptions {
  double tol_abs = 1e-10;
  int max_iter = 25;
  int max_halvings = 10;
  LinearSolveOptions linear{};
};

struct NewtonReport {
  int iterations = 0;
  std::vector<double> residual_norms; ///< entry k is ‖R(u^k)‖
  bool converged = false;
};

struct NewtonResult {
  FeFunction solution;
  NewtonReport report;
};

/// R(u) = (A + J) u + F1(u) - load, with F1 the assembled nonlinear term.
VectorXd semilinear_residual(const SparseOperator& stabilised, const VectorXd& load, const FeFunction& u,
                             const ProblemParams& params);

/// Newton iteration for R(u) = 0 where `stabilised` = a_h + j_h. A step is
/// halved only when the full step increases ‖R‖.
NewtonResult newton_solve(const SparseOperator& stabilised, const VectorXd& load, const ProblemParams& params,
                          FeFunction u0, const NewtonOptions& options = {});

/// Two-column `iteration,residual_norm` trace.
std::string newton_trace_csv(const NewtonReport& report);

} // namespace cutfem
