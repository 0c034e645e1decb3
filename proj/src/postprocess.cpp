#include "cutfem/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cutfem/errors.hpp"
#include "cutfem/quadrature.hpp"

namespace cutfem {

ErrorRecord error_norms(const ManufacturedProblem& problem, const FeFunction& u_h, const ProblemParams& params,
                        const ErrorOptions& options) {
  const FeSpace& space = *u_h.space;
  const auto& mesh = space.mesh();
  const auto& cls = space.classification();
  const auto tri_rule = triangle_rule<double>(params.quadrature.error_degree);
  const auto seg_rule = segment_rule<double>(params.quadrature.error_degree);

  double l2 = 0, semi = 0, boundary = 0, semi_active = 0;
  for (int e : cls.active) {
    const auto tri = mesh.triangle(e);
    const auto dofs = space.element_dofs(e);
    const auto grads = FeSpace::basis_gradients(tri);
    Vec2 grad_h = Vec2::Zero();
    for (int k = 0; k < 3; ++k) grad_h += u_h.coefficients[dofs[k]] * grads[k];
    auto value_h = [&](const Vec2& x) {
      const auto lambda = FeSpace::barycentric(tri, x);
      return lambda[0] * u_h.coefficients[dofs[0]] + lambda[1] * u_h.coefficients[dofs[1]] +
             lambda[2] * u_h.coefficients[dofs[2]];
    };

    for_each_volume_point(tri, cls.labels[e], cls.geometry_of(e), tri_rule, [&](const Vec2& x, double w) {
      const double diff = problem.u_exact(x) - value_h(x);
      l2 += w * diff * diff;
      semi += w * (problem.grad_exact(x) - grad_h).squaredNorm();
    });
    if (options.mesh_norm_diagnostic) {
      for_each_point_on_triangle(tri, tri_rule, [&](const Vec2& x, double w) {
        semi_active += w * (problem.grad_exact(x) - grad_h).squaredNorm();
      });
    }
    if (const auto* cut = cls.geometry_of(e)) {
      const double h = params.local_h ? std::max({(tri[1] - tri[0]).norm(), (tri[2] - tri[1]).norm(),
                                                  (tri[0] - tri[2]).norm()})
                                      : params.h;
      for_each_interface_point(*cut, seg_rule, [&](const Vec2& x, double w, const Vec2&) {
        const double diff = problem.u_exact(x) - value_h(x);
        boundary += params.gamma_d / h * w * diff * diff;
      });
    }
  }

  ErrorRecord r;
  r.h = params.h;
  r.err_l2 = std::sqrt(l2);
  r.err_h1_semi = std::sqrt(semi);
  r.err_h1 = std::sqrt(semi + l2);
  r.boundary_term = std::sqrt(boundary);
  r.err_star = std::sqrt(semi + boundary);
  if (options.mesh_norm_diagnostic) {
    const SparseOperator j = assemble_ghost_penalty(space, params);
    r.j_term = u_h.coefficients.dot(j * u_h.coefficients);
    r.err_h_norm = std::sqrt(semi_active + boundary + std::max(0.0, r.j_term));
  }
  return r;
}

double eoc(double coarse_error, double fine_error) { return std::log2(coarse_error / fine_error); }

ConvergenceTable compute_eoc(std::vector<ErrorRecord> records) {
  if (records.size() < 2) throw ValidationError("compute_eoc: at least two levels are required");
  for (std::size_t l = 1; l < records.size(); ++l) {
    if (std::abs(records[l - 1].h / records[l].h - 2.0) > 1e-9)
      throw ValidationError("compute_eoc: mesh sizes do not halve between levels");
  }
  ConvergenceTable t;
  t.records = std::move(records);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  t.eoc_h1.push_back(nan);
  t.eoc_l2.push_back(nan);
  t.eoc_star.push_back(nan);
  for (std::size_t l = 1; l < t.records.size(); ++l) {
    const auto& c = t.records[l - 1];
    const auto& f = t.records[l];
    t.eoc_h1.push_back(eoc(c.err_h1, f.err_h1));
    t.eoc_l2.push_back(eoc(c.err_l2, f.err_l2));
    t.eoc_star.push_back(eoc(c.err_star, f.err_star));
    t.mean_eoc_h1 += t.eoc_h1.back();
    t.mean_eoc_l2 += t.eoc_l2.back();
    t.mean_eoc_star += t.eoc_star.back();
  }
  const double n = static_cast<double>(t.records.size() - 1);
  t.mean_eoc_h1 /= n;
  t.mean_eoc_l2 /= n;
  t.mean_eoc_star /= n;
  return t;
}

std::string convergence_csv(const ConvergenceTable& table) {
  std::ostringstream os;
  os << "h,err_h1,eoc_h1,err_l2,eoc_l2,err_star,eoc_star\n";
  char buf[256];
  for (std::size_t l = 0; l < table.records.size(); ++l) {
    const auto& r = table.records[l];
    if (l == 0) {
      std::snprintf(buf, sizeof buf, "%.10e,%.10e,,%.10e,,%.10e,\n", r.h, r.err_h1, r.err_l2, r.err_star);
    } else {
      std::snprintf(buf, sizeof buf, "%.10e,%.10e,%.6f,%.10e,%.6f,%.10e,%.6f\n", r.h, r.err_h1,
                    table.eoc_h1[l], r.err_l2, table.eoc_l2[l], r.err_star, table.eoc_star[l]);
    }
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "mean,,%.6f,,%.6f,,%.6f\n", table.mean_eoc_h1, table.mean_eoc_l2,
                table.mean_eoc_star);
  os << buf;
  return os.str();
}

} // namespace cutfem
