#include "cutfem/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cutfem/errors.hpp"

namespace cutfem {

std::string vtk_legacy(const FeFunction& u, const std::string& title) {
  const FeSpace& space = *u.space;
  const auto& mesh = space.mesh();
  const auto& cls = space.classification();
  std::ostringstream os;
  char buf[128];
  os << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << space.n_dofs() << " double\n";
  for (int v : space.vertex_of_dof()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g 0\n", mesh.vertices[v].x(), mesh.vertices[v].y());
    os << buf;
  }
  const auto n_cells = cls.active.size();
  os << "CELLS " << n_cells << ' ' << 4 * n_cells << '\n';
  for (int e : cls.active) {
    const auto d = space.element_dofs(e);
    os << "3 " << d[0] << ' ' << d[1] << ' ' << d[2] << '\n';
  }
  os << "CELL_TYPES " << n_cells << '\n';
  for (std::size_t i = 0; i < n_cells; ++i) os << "5\n";
  os << "CELL_DATA " << n_cells << "\nSCALARS label int 1\nLOOKUP_TABLE default\n";
  for (int e : cls.active) os << static_cast<int>(cls.labels[e]) << '\n';
  os << "POINT_DATA " << space.n_dofs() << "\nSCALARS u double 1\nLOOKUP_TABLE default\n";
  for (int d = 0; d < space.n_dofs(); ++d) {
    std::snprintf(buf, sizeof buf, "%.17g\n", u.coefficients[d]);
    os << buf;
  }
  return os.str();
}

std::string nodal_values_csv(const FeFunction& u) {
  const FeSpace& space = *u.space;
  std::ostringstream os;
  os << "dof,x,y,value\n";
  char buf[128];
  for (int d = 0; d < space.n_dofs(); ++d) {
    const Vec2& x = space.mesh().vertices[space.vertex_of_dof(d)];
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", d, x.x(), x.y(), u.coefficients[d]);
    os << buf;
  }
  return os.str();
}

std::string matrix_coo(const SparseOperator& a) {
  std::ostringstream os;
  os << "row,col,value\n";
  char buf[96];
  for (int k = 0; k < a.outerSize(); ++k) {
    for (SparseOperator::InnerIterator it(a, k); it; ++it) {
      std::snprintf(buf, sizeof buf, "%ld,%ld,%.17g\n", static_cast<long>(it.row()), static_cast<long>(it.col()),
                    it.value());
      os << buf;
    }
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw ValidationError("failed writing '" + path + "'");
}

} // namespace cutfem
