#include "cutfem/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cutfem/errors.hpp"

namespace cutfem {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

double longest_edge(const TriangleVertices<double>& t) {
  return std::max({(t[1] - t[0]).norm(), (t[2] - t[1]).norm(), (t[0] - t[2]).norm()});
}

SparseOperator from_triplets(int n, const Triplets& triplets) {
  SparseOperator a(n, n);
  a.setFromTriplets(triplets.begin(), triplets.end());
  return a;
}

void add_local(Triplets& out, const std::array<int, 3>& dofs, const Eigen::Matrix3d& local) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.emplace_back(dofs[i], dofs[j], local(i, j));
}

// Visits every cut element with its interface quadrature:
// visit(element, dofs, tri, lambda(x), weight, normal, grads).
template <typename Visitor>
void for_each_interface_quadrature(const FeSpace& space, const ProblemParams& params, Visitor&& visit) {
  const auto& cls = space.classification();
  const auto rule = segment_rule<double>(params.quadrature.interface_degree);
  for (std::size_t slot = 0; slot < cls.cut_set.size(); ++slot) {
    const int e = cls.cut_set[slot];
    const auto tri = space.mesh().triangle(e);
    const auto dofs = space.element_dofs(e);
    const auto grads = FeSpace::basis_gradients(tri);
    for_each_interface_point(cls.cuts[slot], rule, [&](const Vec2& x, double w, const Vec2& n) {
      visit(e, dofs, tri, FeSpace::barycentric(tri, x), w, n, grads);
    });
  }
}

double nitsche_h(const ProblemParams& params, const TriangleVertices<double>& tri) {
  return params.local_h ? longest_edge(tri) : params.h;
}

} // namespace

void ProblemParams::validate() const {
  if (!(gamma_d > 0)) throw ValidationError("gamma_d must be positive");
  if (!(gamma_1 >= 0)) throw ValidationError("gamma_1 must be non-negative");
  if (!(p >= 2)) throw ValidationError("p must be at least 2");
  if (!(h > 0)) throw ValidationError("h must be positive");
}

double power_nonlinearity(double u, double p) {
  if (p == 2.0) return u;
  if (p == 4.0) return u * u * u;
  if (u == 0.0) return 0.0;
  return std::pow(std::abs(u), p - 2.0) * u;
}

double power_nonlinearity_derivative(double u, double p) {
  if (p == 2.0) return 1.0;
  if (p == 4.0) return 3.0 * u * u;
  if (u == 0.0) return 0.0;
  return (p - 1.0) * std::pow(std::abs(u), p - 2.0);
}

SparseOperator assemble_ah(const FeSpace& space, const ProblemParams& params) {
  const auto& mesh = space.mesh();
  const auto& cls = space.classification();
  Triplets triplets;
  triplets.reserve(9 * cls.active.size());

  for (int e : cls.active) {
    const auto tri = mesh.triangle(e);
    const double area = cls.is_cut(e) ? cls.geometry_of(e)->inside_area() : signed_area(tri);
    const auto grads = FeSpace::basis_gradients(tri);
    Eigen::Matrix3d local;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) local(i, j) = area * grads[i].dot(grads[j]);
    add_local(triplets, space.element_dofs(e), local);
  }

  for_each_interface_quadrature(space, params, [&](int, const std::array<int, 3>& dofs,
                                                   const TriangleVertices<double>& tri,
                                                   const std::array<double, 3>& lambda, double w,
                                                   const Vec2& n, const std::array<Vec2, 3>& grads) {
    const double penalty = params.gamma_d / nitsche_h(params, tri);
    Eigen::Matrix3d local;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        // row i = test function, column j = trial function
        local(i, j) = w * (-lambda[i] * n.dot(grads[j]) - lambda[j] * n.dot(grads[i]) +
                           penalty * lambda[i] * lambda[j]);
      }
    }
    add_local(triplets, dofs, local);
  });
  return from_triplets(space.n_dofs(), triplets);
}

SparseOperator assemble_interface_mass(const FeSpace& space, const ProblemParams& params) {
  Triplets triplets;
  for_each_interface_quadrature(space, params, [&](int, const std::array<int, 3>& dofs,
                                                   const TriangleVertices<double>&,
                                                   const std::array<double, 3>& lambda, double w,
                                                   const Vec2&, const std::array<Vec2, 3>&) {
    Eigen::Matrix3d local;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) local(i, j) = w * lambda[i] * lambda[j];
    add_local(triplets, dofs, local);
  });
  return from_triplets(space.n_dofs(), triplets);
}

SparseOperator assemble_ghost_penalty(const FeSpace& space, const ProblemParams& params) {
  const auto& mesh = space.mesh();
  const auto& cls = space.classification();
  Triplets triplets;
  triplets.reserve(16 * cls.ghost_faces.size());
  if (params.gamma_1 == 0.0) return from_triplets(space.n_dofs(), triplets);

  for (int f : cls.ghost_faces) {
    const Face& face = mesh.faces[f];
    const Vec2 a = mesh.vertices[face.vertices[0]];
    const Vec2 b = mesh.vertices[face.vertices[1]];
    const double len = (b - a).norm();
    const Vec2 n_f = Vec2(b.y() - a.y(), a.x() - b.x()) / len;
    const double h = params.local_h ? len : params.h;

    // jump coefficients on the (up to four) vertices of K ∪ K'
    std::array<int, 6> dofs{};
    std::array<double, 6> jump{};
    int count = 0;
    auto accumulate = [&](int element, double sign) {
      const auto grads = FeSpace::basis_gradients(mesh.triangle(element));
      const auto ed = space.element_dofs(element);
      for (int k = 0; k < 3; ++k) {
        int slot = 0;
        while (slot < count && dofs[slot] != ed[k]) ++slot;
        if (slot == count) {
          dofs[count] = ed[k];
          jump[count++] = 0.0;
        }
        jump[slot] += sign * n_f.dot(grads[k]);
      }
    };
    accumulate(face.triangles[0], 1.0);
    accumulate(face.triangles[1], -1.0);

    const double scale = params.gamma_1 * h * len;
    for (int i = 0; i < count; ++i)
      for (int j = 0; j < count; ++j) triplets.emplace_back(dofs[i], dofs[j], scale * jump[i] * jump[j]);
  }
  return from_triplets(space.n_dofs(), triplets);
}

VectorXd assemble_load(const FeSpace& space, const ScalarField& f2, const ProblemParams& params) {
  const auto& mesh = space.mesh();
  const auto& cls = space.classification();
  const auto rule = triangle_rule<double>(params.quadrature.volume_degree);
  VectorXd b = VectorXd::Zero(space.n_dofs());
  for (int e : cls.active) {
    const auto tri = mesh.triangle(e);
    const auto dofs = space.element_dofs(e);
    for_each_volume_point(tri, cls.labels[e], cls.geometry_of(e), rule, [&](const Vec2& x, double w) {
      const auto lambda = FeSpace::barycentric(tri, x);
      const double fx = f2(x);
      for (int k = 0; k < 3; ++k) b[dofs[k]] += w * fx * lambda[k];
    });
  }
  return b;
}

VectorXd assemble_nitsche_data(const FeSpace& space, const ScalarField& g, const ProblemParams& params) {
  VectorXd b = VectorXd::Zero(space.n_dofs());
  for_each_interface_quadrature(space, params, [&](int, const std::array<int, 3>& dofs,
                                                   const TriangleVertices<double>& tri,
                                                   const std::array<double, 3>& lambda, double w,
                                                   const Vec2& n, const std::array<Vec2, 3>& grads) {
    const double penalty = params.gamma_d / nitsche_h(params, tri);
    const Vec2 x = lambda[0] * tri[0] + lambda[1] * tri[1] + lambda[2] * tri[2];
    const double gx = g(x);
    for (int k = 0; k < 3; ++k) b[dofs[k]] += w * gx * (-n.dot(grads[k]) + penalty * lambda[k]);
  });
  return b;
}

VectorXd assemble_f1_residual(const FeFunction& u, const ProblemParams& params) {
  const FeSpace& space = *u.space;
  const auto& mesh = space.mesh();
  const auto& cls = space.classification();
  const auto rule = triangle_rule<double>(params.quadrature.volume_degree);
  VectorXd r = VectorXd::Zero(space.n_dofs());
  for (int e : cls.active) {
    const auto tri = mesh.triangle(e);
    const auto dofs = space.element_dofs(e);
    const Eigen::Vector3d c(u.coefficients[dofs[0]], u.coefficients[dofs[1]], u.coefficients[dofs[2]]);
    for_each_volume_point(tri, cls.labels[e], cls.geometry_of(e), rule, [&](const Vec2& x, double w) {
      const auto lambda = FeSpace::barycentric(tri, x);
      const double uh = lambda[0] * c[0] + lambda[1] * c[1] + lambda[2] * c[2];
      const double f = w * power_nonlinearity(uh, params.p);
      for (int k = 0; k < 3; ++k) r[dofs[k]] += f * lambda[k];
    });
  }
  return r;
}

SparseOperator assemble_f1_jacobian(const FeFunction& u, const ProblemParams& params) {
  const FeSpace& space = *u.space;
  const auto& mesh = space.mesh();
  const auto& cls = space.classification();
  const auto rule = triangle_rule<double>(params.quadrature.volume_degree);
  Triplets triplets;
  triplets.reserve(9 * cls.active.size());
  for (int e : cls.active) {
    const auto tri = mesh.triangle(e);
    const auto dofs = space.element_dofs(e);
    const Eigen::Vector3d c(u.coefficients[dofs[0]], u.coefficients[dofs[1]], u.coefficients[dofs[2]]);
    Eigen::Matrix3d local = Eigen::Matrix3d::Zero();
    for_each_volume_point(tri, cls.labels[e], cls.geometry_of(e), rule, [&](const Vec2& x, double w) {
      const auto lambda = FeSpace::barycentric(tri, x);
      const double uh = lambda[0] * c[0] + lambda[1] * c[1] + lambda[2] * c[2];
      const double d = w * power_nonlinearity_derivative(uh, params.p);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) local(i, j) += d * lambda[i] * lambda[j];
    });
    add_local(triplets, dofs, local);
  }
  return from_triplets(space.n_dofs(), triplets);
}

double symmetry_defect(const SparseOperator& a) {
  const SparseOperator diff = SparseOperator(a.transpose()) - a;
  double m = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseOperator::InnerIterator it(diff, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

} // namespace cutfem
