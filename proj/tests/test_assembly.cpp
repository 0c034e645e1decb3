#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "cutfem/assembly.hpp"
#include "cutfem/driver.hpp"

using namespace cutfem;

namespace {

Eigen::MatrixXd dense(const SparseOperator& a) { return Eigen::MatrixXd(a); }

struct SingleTriangle {
  Mesh mesh = mesh_from_triangles({Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)}, {{0, 1, 2}});
  CutClassification cls = classify_elements(mesh, [](const Vec2&) { return -1.0; });
  FeSpace space{mesh, cls};
  ProblemParams params = [] {
    ProblemParams p;
    p.h = 1.0;
    return p;
  }();
};

struct DiscLevel0 {
  std::unique_ptr<Discretization> disc = discretize(disc_problem(4.0), 0.15, 0);
  const FeSpace& space = *disc->space;
  ProblemParams params = [this] {
    ProblemParams p;
    p.h = disc->mesh.h_max;
    return p;
  }();
};

VectorXd random_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  VectorXd v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

double max_abs(const SparseOperator& a) { return a.nonZeros() ? a.coeffs().cwiseAbs().maxCoeff() : 0.0; }

} // namespace

TEST_CASE("a_h on a single inside element is the P1 stiffness matrix") {
  SingleTriangle s;
  Eigen::Matrix3d expected;
  expected << 2, -1, -1, -1, 1, 0, -1, 0, 1;
  expected *= 0.5;
  CHECK((dense(assemble_ah(s.space, s.params)) - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("a_h is affine in gamma_d through the interface mass") {
  DiscLevel0 d;
  ProblemParams doubled = d.params;
  doubled.gamma_d *= 2;
  const SparseOperator diff = assemble_ah(d.space, doubled) - assemble_ah(d.space, d.params);
  const SparseOperator expected = (d.params.gamma_d / d.params.h) * assemble_interface_mass(d.space, d.params);
  CHECK(max_abs(SparseOperator(diff - expected)) <= 1e-12 * max_abs(expected));
}

TEST_CASE("a_h and j_h are symmetric on the disc mesh") {
  DiscLevel0 d;
  const SparseOperator a = assemble_ah(d.space, d.params);
  const SparseOperator j = assemble_ghost_penalty(d.space, d.params);
  CHECK(symmetry_defect(a) <= 1e-12 * max_abs(a));
  CHECK(symmetry_defect(j) <= 1e-12 * max_abs(j));
  CHECK(a.rows() == d.space.n_dofs());
}

TEST_CASE("ghost penalty on one face") {
  // K = (0,0),(1,0),(0,1) and K' = (1,0),(1,1),(0,1) share the face (1,0)-(0,1)
  const Mesh m = mesh_from_triangles({Vec2(0, 0), Vec2(1, 0), Vec2(0, 1), Vec2(1, 1)}, {{0, 1, 2}, {1, 3, 2}});
  const auto cls = classify_elements(m, [](const Vec2& x) { return x.x() - 0.75; });
  REQUIRE(cls.ghost_faces.size() == 1);
  const FeSpace space(m, cls);
  ProblemParams params;
  params.h = 1.0;
  params.gamma_1 = 0.1;

  // grad u = (1, 0) on K, (1/2, -1/2) on K': normal jump 1/sqrt(2), no tangential jump
  VectorXd c(4);
  c << 0.0, 1.0, 0.0, 0.5;
  const FeFunction u(space, c);
  const Vec2 n(1 / std::sqrt(2.0), 1 / std::sqrt(2.0));
  const double jump = n.dot(evaluate(u, 0, Vec2(0.2, 0.2)).gradient - evaluate(u, 1, Vec2(0.8, 0.8)).gradient);
  const double hand = params.gamma_1 * params.h * std::sqrt(2.0) * jump * jump;
  CHECK(hand == doctest::Approx(0.0707107).epsilon(1e-6));

  const SparseOperator j = assemble_ghost_penalty(space, params);
  CHECK(c.dot(j * c) == doctest::Approx(hand).epsilon(1e-14));

  SUBCASE("affine inputs give no contribution") {
    const VectorXd lin = interpolate_nodal([](const Vec2& x) { return 2 * x.x() - x.y() + 1; }, space).coefficients;
    CHECK(std::abs(lin.dot(j * lin)) < 1e-15);
  }
  SUBCASE("gamma_1 = 0 gives the zero operator") {
    params.gamma_1 = 0.0;
    CHECK(assemble_ghost_penalty(space, params).nonZeros() == 0);
  }
}

TEST_CASE("ghost penalty is positive semidefinite") {
  DiscLevel0 d;
  const SparseOperator j = assemble_ghost_penalty(d.space, d.params);
  std::mt19937_64 rng(17);
  for (int k = 0; k < 100; ++k) {
    const VectorXd x = random_vector(d.space.n_dofs(), rng);
    CHECK(x.dot(j * x) >= -1e-12 * x.squaredNorm());
  }
}

TEST_CASE("load vector") {
  SingleTriangle s;
  CHECK(assemble_load(s.space, [](const Vec2&) { return 0.0; }, s.params).isZero());
  const VectorXd b = assemble_load(s.space, [](const Vec2&) { return 1.0; }, s.params);
  for (int i = 0; i < 3; ++i) CHECK(b[i] == doctest::Approx(1.0 / 6).epsilon(1e-15));

  for (int level = 0; level < 3; ++level) {
    auto disc = discretize(disc_problem(4.0), 0.15, level);
    ProblemParams params;
    params.h = disc->mesh.h_max;
    const double total = assemble_load(*disc->space, [](const Vec2&) { return 1.0; }, params).sum();
    // inscribed polygonal domain: area defect is O(h^2)
    CHECK(total < M_PI);
    CHECK(M_PI - total <= params.h * params.h);
  }
}

TEST_CASE("nonlinear residual") {
  SingleTriangle s;
  CHECK(assemble_f1_residual(FeFunction(s.space), s.params).isZero());
  const VectorXd ones = assemble_f1_residual(FeFunction(s.space, VectorXd::Ones(3)), s.params);
  for (int i = 0; i < 3; ++i) CHECK(ones[i] == doctest::Approx(1.0 / 6).epsilon(1e-14));

  DiscLevel0 d;
  std::mt19937_64 rng(2);
  for (double p : {2.0, 3.0, 4.0, 5.5}) {
    d.params.p = p;
    const VectorXd c = random_vector(d.space.n_dofs(), rng);
    const VectorXd plus = assemble_f1_residual(FeFunction(d.space, c), d.params);
    const VectorXd minus = assemble_f1_residual(FeFunction(d.space, -c), d.params);
    CHECK((plus + minus).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("nonlinear Jacobian") {
  SingleTriangle s;
  s.params.p = 4.0;
  CHECK(max_abs(assemble_f1_jacobian(FeFunction(s.space), s.params)) == 0.0);

  SUBCASE("p = 2 gives the mass matrix") {
    s.params.p = 2.0;
    Eigen::Matrix3d mass;
    mass << 2, 1, 1, 1, 2, 1, 1, 1, 2;
    mass *= 0.5 / 12;
    std::mt19937_64 rng(9);
    for (int k = 0; k < 3; ++k) {
      const FeFunction u(s.space, random_vector(3, rng));
      CHECK((dense(assemble_f1_jacobian(u, s.params)) - mass).cwiseAbs().maxCoeff() < 1e-15);
    }
  }

  SUBCASE("finite-difference consistency on the disc mesh") {
    DiscLevel0 d;
    std::mt19937_64 rng(4);
    const double eps = 1e-6;
    for (double p : {2.0, 3.0, 4.0}) {
      d.params.p = p;
      const FeFunction u(d.space, random_vector(d.space.n_dofs(), rng));
      const VectorXd v = random_vector(d.space.n_dofs(), rng);
      const SparseOperator jac = assemble_f1_jacobian(u, d.params);
      CHECK(symmetry_defect(jac) <= 1e-14 * max_abs(jac));
      const VectorXd jv = jac * v;
      const VectorXd fd = (assemble_f1_residual(FeFunction(d.space, u.coefficients + eps * v), d.params) -
                           assemble_f1_residual(u, d.params)) /
                          eps;
      CHECK((fd - jv).norm() <= 1e-5 * jv.norm() + 1e-10);
    }
  }
}

TEST_CASE("power nonlinearity") {
  CHECK(power_nonlinearity(-2.0, 4.0) == -8.0);
  CHECK(power_nonlinearity(0.0, 3.5) == 0.0);
  CHECK(power_nonlinearity_derivative(0.0, 3.5) == 0.0);
  CHECK(power_nonlinearity_derivative(0.0, 2.0) == 1.0);
  CHECK(power_nonlinearity(-0.5, 3.0) == doctest::Approx(-0.25));
  CHECK(power_nonlinearity_derivative(-0.5, 3.0) == doctest::Approx(1.0));
}

TEST_CASE("parameter validation") {
  ProblemParams p;
  p.h = 0.1;
  CHECK_NOTHROW(p.validate());
  p.gamma_d = 0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p.gamma_d = 1;
  p.gamma_1 = -1;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p.gamma_1 = 0;
  p.p = 1.5;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p.p = 2;
  p.h = 0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("local h on a uniform mesh") {
  DiscLevel0 d;
  ProblemParams local = d.params;
  local.local_h = true;
  // every element of the structured mesh has diameter h_max
  const SparseOperator diff = assemble_ah(d.space, local) - assemble_ah(d.space, d.params);
  CHECK(max_abs(diff) <= 1e-12);
  const SparseOperator j_local = assemble_ghost_penalty(d.space, local);
  CHECK(symmetry_defect(j_local) <= 1e-12 * max_abs(j_local));
  CHECK(max_abs(j_local) <= max_abs(assemble_ghost_penalty(d.space, d.params)) * (1 + 1e-12));
}
