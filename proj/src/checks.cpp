#include "cutfem/checks.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "cutfem/assembly.hpp"
#include "cutfem/config.hpp"
#include "cutfem/driver.hpp"
#include "cutfem/quadrature.hpp"

namespace cutfem {

namespace {

std::string fmt(const char* f, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

CheckResult check_quadrature() {
  double worst = 0;
  for (int d = 1; d <= 6; ++d) {
    const auto rule = triangle_rule<double>(d);
    for (int a = 0; a <= rule.exact_degree; ++a) {
      for (int b = 0; a + b <= rule.exact_degree; ++b) {
        double q = 0;
        for (std::size_t k = 0; k < rule.size(); ++k)
          q += rule.weights[k] * std::pow(rule.points[k].x(), a) * std::pow(rule.points[k].y(), b);
        const double exact = factorial(a) * factorial(b) / factorial(a + b + 2);
        worst = std::max(worst, std::abs(q - exact) / exact);
      }
    }
    const auto seg = segment_rule<double>(d);
    for (int a = 0; a <= seg.exact_degree; ++a) {
      double q = 0;
      for (std::size_t k = 0; k < seg.size(); ++k) q += seg.weights[k] * std::pow(seg.points[k], a);
      worst = std::max(worst, std::abs(q - 1.0 / (a + 1)) * (a + 1));
    }
  }
  return {"quadrature monomial exactness", worst <= 1e-12, fmt("max relative error %.2e", worst)};
}

CheckResult check_partition(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    TriangleVertices<double> t{Vec2(u(rng), u(rng)), Vec2(u(rng), u(rng)), Vec2(u(rng), u(rng))};
    if (signed_area(t) < 0) std::swap(t[1], t[2]);
    if (signed_area(t) < 1e-3) continue;
    std::array<double, 3> phi{u(rng), u(rng), u(rng)};
    if ((phi[0] < 0) == (phi[1] < 0) && (phi[1] < 0) == (phi[2] < 0)) phi[0] = -phi[0] - 0.1 * (phi[0] >= 0 ? 1 : -1);
    if ((phi[0] < 0) == (phi[1] < 0) && (phi[1] < 0) == (phi[2] < 0)) continue;
    const std::array<double, 3> neg{-phi[0], -phi[1], -phi[2]};
    const double total = intersect_element(t, phi).inside_area() + intersect_element(t, neg).inside_area();
    worst = std::max(worst, std::abs(total - signed_area(t)) / signed_area(t));
  }
  return {"cut partition property", worst <= 1e-12, fmt("max relative defect %.2e", worst)};
}

} // namespace

std::vector<CheckResult> run_property_checks(int seed) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  std::vector<CheckResult> out;
  out.push_back(check_quadrature());
  out.push_back(check_partition(rng));

  RunConfig config;
  const auto problem = make_problem(config.problem, config.p);
  const auto disc = discretize(problem, config.base_h, 0);
  const FeSpace& space = *disc->space;
  const ProblemParams params = config.problem_params(disc->mesh.h_max);
  const SparseOperator a = assemble_ah(space, params);
  const SparseOperator j = assemble_ghost_penalty(space, params);

  const double sym = std::max(symmetry_defect(a) / a.coeffs().cwiseAbs().maxCoeff(),
                              symmetry_defect(j) / std::max(1e-300, j.coeffs().cwiseAbs().maxCoeff()));
  out.push_back({"a_h and j_h symmetry", sym <= 1e-12, fmt("relative defect %.2e", sym)});

  std::normal_distribution<double> normal;
  double min_quad = 0;
  for (int k = 0; k < 100; ++k) {
    VectorXd x(space.n_dofs());
    for (auto& v : x) v = normal(rng);
    min_quad = std::min(min_quad, x.dot(j * x) / x.squaredNorm());
  }
  out.push_back({"j_h positive semidefinite", min_quad >= -1e-12, fmt("min x'Jx/|x|^2 %.2e", min_quad)});

  const FeFunction affine = interpolate_nodal([](const Vec2& x) { return 1.0 + 2.0 * x.x() - 3.0 * x.y(); }, space);
  const double j_affine = affine.coefficients.dot(j * affine.coefficients);
  out.push_back({"j_h vanishes on affine functions", std::abs(j_affine) <= 1e-12, fmt("j(u,u) = %.2e", j_affine)});

  FeFunction u(space), v(space);
  for (int d = 0; d < space.n_dofs(); ++d) {
    u.coefficients[d] = normal(rng);
    v.coefficients[d] = normal(rng);
  }
  const double eps = 1e-6;
  FeFunction shifted(space, u.coefficients + eps * v.coefficients);
  const VectorXd jv = assemble_f1_jacobian(u, params) * v.coefficients;
  const VectorXd fd = (assemble_f1_residual(shifted, params) - assemble_f1_residual(u, params)) / eps;
  const double fd_err = (fd - jv).norm();
  out.push_back({"Jacobian finite-difference consistency", fd_err <= 1e-5 * jv.norm() + 1e-10,
                 fmt("error %.2e", fd_err)});

  std::uniform_real_distribution<double> radius(0, 1), angle(0, 2 * M_PI);
  double pde = 0;
  for (int k = 0; k < 1000; ++k) {
    const double r = std::sqrt(radius(rng)), t = angle(rng);
    const Vec2 x(r * std::cos(t), r * std::sin(t));
    pde = std::max(pde, std::abs(-problem.laplacian_exact(x) + power_nonlinearity(problem.u_exact(x), problem.p) -
                                 problem.f2(x)));
  }
  out.push_back({"manufactured problem residual", pde <= 1e-10, fmt("max |residual| %.2e", pde)});

  config.gamma_d = 3.25;
  config.output_dir = "some/dir";
  const bool round_trip = parse_config(serialize_config(config)) == config;
  out.push_back({"config round trip", round_trip, round_trip ? "identical" : "mismatch"});
  return out;
}

} // namespace cutfem
