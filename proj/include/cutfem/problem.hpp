#pragma once

#include <functional>
#include <string>

#include "cutfem/geometry.hpp"
#include "cutfem/space.hpp"

namespace cutfem {

using VectorField = std::function<Vec2(const Vec2&)>;

/// A problem -Δu + |u|^{p-2}u = f2 in {phi < 0}, u = g on {phi = 0}, with
/// known exact solution. `dirichlet` empty means g = 0.
struct ManufacturedProblem {
  std::string name;
  double p = 4.0;
  Rect background{Vec2(-1.5, -1.5), Vec2(1.5, 1.5)};
  LevelSet phi;
  ScalarField u_exact;
  VectorField grad_exact;
  ScalarField laplacian_exact;
  ScalarField f2;
  ScalarField dirichlet;
};

/// Unit disc centred at `center`, u = (1 - r^2)/2, f2 = 2 + |u|^{p-2}u.
ManufacturedProblem disc_problem(double p, const Vec2& center = Vec2::Zero());

/// Unit disc with zero data, exact solution u = 0.
ManufacturedProblem zero_problem(double p, const Vec2& center = Vec2::Zero());

/// Unit disc with the affine exact solution u = 0.3 + 0.5x - 0.2y and
/// matching nonhomogeneous Dirichlet data.
ManufacturedProblem affine_patch_problem(double p, const Vec2& center = Vec2::Zero());

/// Looks up "disc-p4", "disc-zero" or "patch-affine"; throws ValidationError otherwise.
ManufacturedProblem make_problem(const std::string& id, double p, const Vec2& center = Vec2::Zero());

} // namespace cutfem
