#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <random>

#include <Eigen/Dense>

#include "cutfem/driver.hpp"
#include "cutfem/solver.hpp"

using namespace cutfem;

namespace {

SparseOperator sparse_from(const Eigen::MatrixXd& m) { return m.sparseView(); }

struct DiscSystem {
  ManufacturedProblem problem;
  std::unique_ptr<Discretization> disc;
  ProblemParams params;
  LinearSystem sys;

  explicit DiscSystem(double p, int level = 0) : problem(disc_problem(p)), disc(discretize(problem, 0.15, level)) {
    params.p = p;
    params.h = disc->mesh.h_max;
    sys = assemble_system(*disc->space, problem, params);
  }
  const FeSpace& space() const { return *disc->space; }
};

} // namespace

TEST_CASE("linear solve on small systems") {
  SUBCASE("identity") {
    const VectorXd b = VectorXd::LinSpaced(5, -2, 3);
    SparseOperator id(5, 5);
    id.setIdentity();
    CHECK((linear_solve(id, b) - b).norm() == 0.0);
  }
  SUBCASE("diagonal") {
    Eigen::MatrixXd a(2, 2);
    a << 2, 0, 0, 4;
    const VectorXd x = linear_solve(sparse_from(a), Eigen::Vector2d(2, 8));
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-15));
  }
  SUBCASE("zero right-hand side") {
    SparseOperator id(3, 3);
    id.setIdentity();
    CHECK(linear_solve(id, VectorXd::Zero(3)).isZero());
  }
}

TEST_CASE("random SPD system meets the residual tolerance") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(50, 50);
  for (auto& x : m.reshaped()) x = g(rng);
  const Eigen::MatrixXd a = m.transpose() * m + Eigen::MatrixXd::Identity(50, 50);
  VectorXd b(50);
  for (auto& x : b) x = g(rng);

  for (auto method : {LinearMethod::Direct, LinearMethod::ConjugateGradient}) {
    LinearSolveOptions opts;
    opts.method = method;
    const VectorXd x = linear_solve(sparse_from(a), b, opts);
    CHECK((a * x - b).norm() / b.norm() <= 1e-12);
  }
}

TEST_CASE("singular systems raise SolverError") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  a(0, 0) = 1;
  a(1, 1) = 1;
  CHECK_THROWS_AS(linear_solve(sparse_from(a), Eigen::Vector3d(1, 1, 1)), SolverError);
}

TEST_CASE("reused solver handles a changing pattern") {
  LinearSolver solver;
  SparseOperator id(4, 4);
  id.setIdentity();
  const VectorXd b = VectorXd::Ones(4);
  CHECK((solver.solve(id, b) - b).norm() == 0.0);
  Eigen::MatrixXd t = 2 * Eigen::MatrixXd::Identity(4, 4);
  t(0, 1) = t(1, 0) = -1;
  const SparseOperator a = sparse_from(t);
  CHECK((a * solver.solve(a, b) - b).norm() <= 1e-12 * b.norm());
}

TEST_CASE("Newton: zero data gives the zero solution without iterating") {
  auto problem = zero_problem(4.0);
  auto disc = discretize(problem, 0.15, 0);
  ProblemParams params;
  params.h = disc->mesh.h_max;
  const auto sys = assemble_system(*disc->space, problem, params);
  const auto result = newton_solve(sys.stabilised, sys.rhs, params, FeFunction(*disc->space));
  CHECK(result.report.converged);
  CHECK(result.report.iterations == 0);
  CHECK(result.solution.coefficients.isZero());
}

TEST_CASE("Newton: the linear limit p = 2 takes exactly one step") {
  DiscSystem d(2.0);
  const auto result = newton_solve(d.sys.stabilised, d.sys.rhs, d.params, FeFunction(d.space()));
  CHECK(result.report.converged);
  CHECK(result.report.iterations == 1);
}

TEST_CASE("Newton on the disc problem, p = 4, level 0") {
  DiscSystem d(4.0);
  const NewtonOptions opts;
  const auto result = newton_solve(d.sys.stabilised, d.sys.rhs, d.params, FeFunction(d.space()), opts);
  REQUIRE(result.report.converged);
  CHECK(result.report.iterations <= 8);
  // frozen regression value from the first verified run
  CHECK(result.report.iterations == 4);

  const auto& r = result.report.residual_norms;
  REQUIRE(r.size() == static_cast<std::size_t>(result.report.iterations) + 1);
  CHECK(r.back() <= opts.tol_abs);
  CHECK(r[r.size() - 1] / r[r.size() - 2] <= 1e-3);

  // re-assembled residual certificate
  const double certificate = semilinear_residual(d.sys.stabilised, d.sys.rhs, result.solution, d.params).norm();
  CHECK(certificate <= 2 * opts.tol_abs);

  SUBCASE("bitwise reproducible") {
    DiscSystem again(4.0);
    const auto second = newton_solve(again.sys.stabilised, again.sys.rhs, again.params, FeFunction(again.space()));
    const VectorXd& a = result.solution.coefficients;
    const VectorXd& b = second.solution.coefficients;
    REQUIRE(a.size() == b.size());
    CHECK(std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0);
  }

  SUBCASE("conjugate gradient path converges to the same solution") {
    NewtonOptions cg = opts;
    cg.linear.method = LinearMethod::ConjugateGradient;
    cg.linear.tol = 1e-12;
    const auto other = newton_solve(d.sys.stabilised, d.sys.rhs, d.params, FeFunction(d.space()), cg);
    REQUIRE(other.report.converged);
    CHECK((other.solution.coefficients - result.solution.coefficients).lpNorm<Eigen::Infinity>() <= 1e-9);
  }
}

TEST_CASE("Newton reports non-convergence when the iteration cap is hit") {
  DiscSystem d(4.0);
  NewtonOptions opts;
  opts.max_iter = 1;
  const auto result = newton_solve(d.sys.stabilised, d.sys.rhs, d.params, FeFunction(d.space()), opts);
  CHECK_FALSE(result.report.converged);
  CHECK(result.report.iterations == 1);
}

TEST_CASE("Newton trace CSV") {
  NewtonReport report;
  report.iterations = 1;
  report.residual_norms = {1.0, 2.5e-11};
  CHECK(newton_trace_csv(report) == "iteration,residual_norm\n0,1.0000000000e+00\n1,2.5000000000e-11\n");
}
