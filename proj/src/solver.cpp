#include "cutfem/solver.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <cstdio>
#include <optional>
#include <sstream>

#include "cutfem/errors.hpp"

namespace cutfem {

struct LinearSolver::Impl {
  Eigen::SimplicialLDLT<SparseOperator> ldlt;
  std::optional<Eigen::SparseLU<SparseOperator>> lu;
  bool analysed = false;
  Eigen::Index pattern_nnz = -1;
};

LinearSolver::LinearSolver(LinearSolveOptions options)
    : options_(options), impl_(std::make_unique<Impl>()) {}
LinearSolver::~LinearSolver() = default;
LinearSolver::LinearSolver(LinearSolver&&) noexcept = default;
LinearSolver& LinearSolver::operator=(LinearSolver&&) noexcept = default;

VectorXd LinearSolver::solve(const SparseOperator& a, const VectorXd& b) {
  if (a.rows() != a.cols()) throw ValidationError("linear_solve: matrix is not square");
  if (a.rows() != b.size()) throw ValidationError("linear_solve: dimension mismatch");
  const double b_norm = b.norm();
  if (b.size() == 0 || b_norm == 0.0) return VectorXd::Zero(b.size());

  if (options_.method == LinearMethod::ConjugateGradient) {
    Eigen::ConjugateGradient<SparseOperator, Eigen::Lower | Eigen::Upper, Eigen::DiagonalPreconditioner<double>> cg;
    cg.setTolerance(options_.tol);
    cg.setMaxIterations(20 * static_cast<int>(a.rows()));
    cg.compute(a);
    VectorXd x = cg.solve(b);
    if (cg.info() != Eigen::Success || (a * x - b).norm() > options_.tol * b_norm)
      throw SolverError("linear_solve: conjugate gradient did not converge");
    return x;
  }

  Impl& s = *impl_;
  if (!s.analysed || s.pattern_nnz != a.nonZeros()) {
    s.ldlt.analyzePattern(a);
    s.analysed = true;
    s.pattern_nnz = a.nonZeros();
  }
  s.ldlt.factorize(a);
  const bool use_lu = s.ldlt.info() != Eigen::Success;
  if (use_lu) {
    s.lu.emplace();
    s.lu->compute(a);
    if (s.lu->info() != Eigen::Success) throw SolverError("linear_solve: singular factorisation");
  }
  auto apply = [&](const VectorXd& rhs) -> VectorXd {
    if (use_lu) return s.lu->solve(rhs);
    return s.ldlt.solve(rhs);
  };

  VectorXd x = apply(b);
  VectorXd r = b - a * x;
  for (int step = 0; step < options_.refinement_steps && r.norm() > options_.tol * b_norm; ++step) {
    x += apply(r);
    r = b - a * x;
  }
  if (!x.allFinite() || r.norm() > options_.tol * b_norm) {
    char msg[128];
    std::snprintf(msg, sizeof msg, "linear_solve: relative residual %.3e above tolerance %.1e",
                  r.norm() / b_norm, options_.tol);
    throw SolverError(msg);
  }
  return x;
}

VectorXd linear_solve(const SparseOperator& a, const VectorXd& b, const LinearSolveOptions& options) {
  LinearSolver solver(options);
  return solver.solve(a, b);
}

VectorXd semilinear_residual(const SparseOperator& stabilised, const VectorXd& load, const FeFunction& u,
                             const ProblemParams& params) {
  return stabilised * u.coefficients + assemble_f1_residual(u, params) - load;
}

NewtonResult newton_solve(const SparseOperator& stabilised, const VectorXd& load, const ProblemParams& params,
                          FeFunction u0, const NewtonOptions& options) {
  if (!(options.tol_abs > 0)) throw ValidationError("newton_solve: tol_abs must be positive");
  if (u0.space == nullptr || stabilised.rows() != u0.coefficients.size() || load.size() != u0.coefficients.size())
    throw ValidationError("newton_solve: dimension mismatch");

  NewtonResult result{std::move(u0), {}};
  FeFunction& u = result.solution;
  NewtonReport& report = result.report;
  LinearSolver linear(options.linear);

  VectorXd residual = semilinear_residual(stabilised, load, u, params);
  double r_norm = residual.norm();
  report.residual_norms.push_back(r_norm);
  while (r_norm > options.tol_abs && report.iterations < options.max_iter) {
    const SparseOperator jacobian = stabilised + assemble_f1_jacobian(u, params);
    const VectorXd delta = linear.solve(jacobian, -residual);

    FeFunction trial(*u.space, u.coefficients + delta);
    VectorXd trial_residual = semilinear_residual(stabilised, load, trial, params);
    double step = 1.0;
    for (int k = 0; k < options.max_halvings && trial_residual.norm() > r_norm; ++k) {
      step *= 0.5;
      trial.coefficients = u.coefficients + step * delta;
      trial_residual = semilinear_residual(stabilised, load, trial, params);
    }
    u = std::move(trial);
    residual = std::move(trial_residual);
    r_norm = residual.norm();
    ++report.iterations;
    report.residual_norms.push_back(r_norm);
  }
  report.converged = r_norm <= options.tol_abs;
  return result;
}

std::string newton_trace_csv(const NewtonReport& report) {
  std::ostringstream os;
  os << "iteration,residual_norm\n";
  char buf[64];
  for (std::size_t k = 0; k < report.residual_norms.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%zu,%.10e\n", k, report.residual_norms[k]);
    os << buf;
  }
  return os.str();
}

} // namespace cutfem
