#include "cutfem/problem.hpp"

#include "cutfem/assembly.hpp"
#include "cutfem/errors.hpp"

namespace cutfem {

ManufacturedProblem disc_problem(double p, const Vec2& center) {
  ManufacturedProblem m;
  m.name = "disc-p4";
  m.p = p;
  m.phi = disc_level_set(center, 1.0);
  m.u_exact = [center](const Vec2& x) { return 0.5 * (1.0 - (x - center).squaredNorm()); };
  m.grad_exact = [center](const Vec2& x) -> Vec2 { return -(x - center); };
  m.laplacian_exact = [](const Vec2&) { return -2.0; };
  m.f2 = [center, p](const Vec2& x) {
    const double u = 0.5 * (1.0 - (x - center).squaredNorm());
    return 2.0 + power_nonlinearity(u, p);
  };
  return m;
}

ManufacturedProblem zero_problem(double p, const Vec2& center) {
  ManufacturedProblem m;
  m.name = "disc-zero";
  m.p = p;
  m.phi = disc_level_set(center, 1.0);
  m.u_exact = [](const Vec2&) { return 0.0; };
  m.grad_exact = [](const Vec2&) -> Vec2 { return Vec2::Zero(); };
  m.laplacian_exact = [](const Vec2&) { return 0.0; };
  m.f2 = [](const Vec2&) { return 0.0; };
  return m;
}

ManufacturedProblem affine_patch_problem(double p, const Vec2& center) {
  ManufacturedProblem m;
  m.name = "patch-affine";
  m.p = p;
  m.phi = disc_level_set(center, 1.0);
  auto u = [](const Vec2& x) { return 0.3 + 0.5 * x.x() - 0.2 * x.y(); };
  m.u_exact = u;
  m.grad_exact = [](const Vec2&) -> Vec2 { return Vec2(0.5, -0.2); };
  m.laplacian_exact = [](const Vec2&) { return 0.0; };
  m.f2 = [u, p](const Vec2& x) { return power_nonlinearity(u(x), p); };
  m.dirichlet = u;
  return m;
}

ManufacturedProblem make_problem(const std::string& id, double p, const Vec2& center) {
  if (id == "disc-p4") return disc_problem(p, center);
  if (id == "disc-zero") return zero_problem(p, center);
  if (id == "patch-affine") return affine_patch_problem(p, center);
  throw ValidationError("unknown problem id '" + id + "'");
}

} // namespace cutfem
