#include "cutfem/space.hpp"

#include <utility>

#include "cutfem/errors.hpp"

namespace cutfem {

FeSpace::FeSpace(const Mesh& mesh, const CutClassification& classification)
    : mesh_(&mesh), classification_(&classification) {
  if (classification.labels.size() != mesh.num_triangles())
    throw ValidationError("FeSpace: classification does not match mesh");
  std::vector<char> used(mesh.num_vertices(), 0);
  for (int t : classification.active)
    for (int v : mesh.triangles[t]) used[v] = 1;
  dof_of_vertex_.assign(mesh.num_vertices(), -1);
  for (std::size_t v = 0; v < used.size(); ++v) {
    if (!used[v]) continue;
    dof_of_vertex_[v] = static_cast<int>(vertex_of_dof_.size());
    vertex_of_dof_.push_back(static_cast<int>(v));
  }
}

std::array<int, 3> FeSpace::element_dofs(int element) const {
  const auto& ids = mesh_->triangles[element];
  return {dof_of_vertex_[ids[0]], dof_of_vertex_[ids[1]], dof_of_vertex_[ids[2]]};
}

std::array<Vec2, 3> FeSpace::basis_gradients(const TriangleVertices<double>& t) {
  const double two_area = 2.0 * signed_area(t);
  std::array<Vec2, 3> g;
  for (int k = 0; k < 3; ++k) {
    const Vec2& a = t[(k + 1) % 3];
    const Vec2& b = t[(k + 2) % 3];
    // rotate the opposite edge by -90 degrees
    g[k] = Vec2(a.y() - b.y(), b.x() - a.x()) / two_area;
  }
  return g;
}

std::array<double, 3> FeSpace::barycentric(const TriangleVertices<double>& t, const Vec2& x) {
  const double area = signed_area(t);
  return {signed_area(x, t[1], t[2]) / area, signed_area(t[0], x, t[2]) / area,
          signed_area(t[0], t[1], x) / area};
}

FeSpace build_space(const CutClassification& classification, const Mesh& mesh) {
  return FeSpace(mesh, classification);
}

FeFunction::FeFunction(const FeSpace& s, VectorXd c) : space(&s), coefficients(std::move(c)) {
  if (coefficients.size() != s.n_dofs()) throw ValidationError("FeFunction: coefficient length mismatch");
}

PointValue evaluate(const FeFunction& f, int element, const Vec2& x) {
  const FeSpace& space = *f.space;
  if (element < 0 || element >= static_cast<int>(space.mesh().num_triangles()) ||
      !space.classification().is_active(element))
    throw ValidationError("evaluate: element is not active");
  const auto tri = space.mesh().triangle(element);
  const auto dofs = space.element_dofs(element);
  const auto lambda = FeSpace::barycentric(tri, x);
  const auto grads = FeSpace::basis_gradients(tri);
  PointValue out{0.0, Vec2::Zero()};
  for (int k = 0; k < 3; ++k) {
    const double c = f.coefficients[dofs[k]];
    out.value += lambda[k] * c;
    out.gradient += c * grads[k];
  }
  return out;
}

FeFunction interpolate_nodal(const ScalarField& g, const FeSpace& space) {
  VectorXd c(space.n_dofs());
  for (int d = 0; d < space.n_dofs(); ++d) c[d] = g(space.mesh().vertices[space.vertex_of_dof(d)]);
  return FeFunction(space, std::move(c));
}

} // namespace cutfem
