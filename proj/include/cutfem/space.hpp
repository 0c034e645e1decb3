#pragma once

#include <array>
#include <functional>
#include <vector>

#include "cutfem/geometry.hpp"
#include "cutfem/types.hpp"

namespace cutfem {

/// Continuous P1 space on the active elements. Holds non-owning references to
/// the mesh and classification, which must outlive it.
class FeSpace {
public:
  FeSpace(const Mesh& mesh, const CutClassification& classification);

  const Mesh& mesh() const { return *mesh_; }
  const CutClassification& classification() const { return *classification_; }

  int n_dofs() const { return static_cast<int>(vertex_of_dof_.size()); }
  int dof_of_vertex(int vertex) const { return dof_of_vertex_[vertex]; }
  int vertex_of_dof(int dof) const { return vertex_of_dof_[dof]; }
  const std::vector<int>& vertex_of_dof() const { return vertex_of_dof_; }

  /// DOF indices of the three vertices of an active element.
  std::array<int, 3> element_dofs(int element) const;

  /// Constant gradients of the three barycentric basis functions.
  static std::array<Vec2, 3> basis_gradients(const TriangleVertices<double>& t);
  static std::array<double, 3> barycentric(const TriangleVertices<double>& t, const Vec2& x);

private:
  const Mesh* mesh_;
  const CutClassification* classification_;
  std::vector<int> dof_of_vertex_; ///< -1 for vertices without a DOF
  std::vector<int> vertex_of_dof_;
};

FeSpace build_space(const CutClassification& classification, const Mesh& mesh);

struct FeFunction {
  const FeSpace* space = nullptr;
  VectorXd coefficients;

  FeFunction() = default;
  explicit FeFunction(const FeSpace& s) : space(&s), coefficients(VectorXd::Zero(s.n_dofs())) {}
  FeFunction(const FeSpace& s, VectorXd c);
};

struct PointValue {
  double value;
  Vec2 gradient;
};

/// Value and gradient of `f` at `x` inside active element `element`.
/// Throws ValidationError for an inactive element.
PointValue evaluate(const FeFunction& f, int element, const Vec2& x);

using ScalarField = std::function<double(const Vec2&)>;

FeFunction interpolate_nodal(const ScalarField& g, const FeSpace& space);

} // namespace cutfem
