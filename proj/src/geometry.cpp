#include "cutfem/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

namespace cutfem {

namespace {

int cells_for(double length, double max_side) {
  const double ratio = length / max_side;
  // Ratios that are integers up to rounding must not gain an extra cell.
  return std::max(1, static_cast<int>(std::ceil(ratio * (1.0 - 1e-12))));
}

void build_faces(Mesh& mesh) {
  struct EdgeRef {
    std::int64_t key;
    int triangle;
    int local;
  };
  const auto nv = static_cast<std::int64_t>(mesh.vertices.size());
  std::vector<EdgeRef> edges;
  edges.reserve(3 * mesh.triangles.size());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int k = 0; k < 3; ++k) {
      const int a = tri[(k + 1) % 3];
      const int b = tri[(k + 2) % 3];
      edges.push_back({std::min(a, b) * nv + std::max(a, b), static_cast<int>(t), k});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const EdgeRef& l, const EdgeRef& r) {
    return std::tie(l.key, l.triangle) < std::tie(r.key, r.triangle);
  });

  mesh.faces.clear();
  mesh.triangle_faces.assign(mesh.triangles.size(), {-1, -1, -1});
  for (std::size_t i = 0; i < edges.size();) {
    std::size_t j = i;
    while (j < edges.size() && edges[j].key == edges[i].key) ++j;
    if (j - i > 2) throw GeometryError("build_faces: non-manifold edge");
    Face face;
    face.vertices = {static_cast<int>(edges[i].key / nv), static_cast<int>(edges[i].key % nv)};
    for (std::size_t k = i; k < j; ++k) {
      face.triangles[k - i] = edges[k].triangle;
      mesh.triangle_faces[edges[k].triangle][edges[k].local] = static_cast<int>(mesh.faces.size());
    }
    mesh.faces.push_back(face);
    i = j;
  }
}

} // namespace

Mesh build_structured_mesh(const Rect& bounds, int nx, int ny) {
  if (!(bounds.width() > 0) || !(bounds.height() > 0))
    throw ValidationError("build_structured_mesh: degenerate bounds");
  if (nx < 1 || ny < 1) throw ValidationError("build_structured_mesh: cell counts must be positive");

  Mesh mesh;
  mesh.nx = nx;
  mesh.ny = ny;
  mesh.bounds = bounds;
  mesh.vertices.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      mesh.vertices.emplace_back(bounds.lo.x() + (i * bounds.width()) / nx,
                                 bounds.lo.y() + (j * bounds.height()) / ny);

  mesh.triangles.reserve(2 * static_cast<std::size_t>(nx) * ny);
  auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      mesh.triangles.push_back({v00, v10, v11});
      mesh.triangles.push_back({v00, v11, v01});
    }
  }
  const double dx = bounds.width() / nx;
  const double dy = bounds.height() / ny;
  mesh.h_max = std::sqrt(dx * dx + dy * dy);
  build_faces(mesh);
  return mesh;
}

Mesh build_background_mesh(const Rect& bounds, double target_h) {
  if (!(target_h > 0)) throw ValidationError("build_background_mesh: target_h must be positive");
  if (!(bounds.width() > 0) || !(bounds.height() > 0))
    throw ValidationError("build_background_mesh: degenerate bounds");
  const double max_side = target_h / std::sqrt(2.0);
  if (max_side > std::min(bounds.width(), bounds.height()) * (1.0 + 1e-12))
    throw ValidationError("build_background_mesh: target_h exceeds the cell size of a one-cell grid");
  return build_structured_mesh(bounds, cells_for(bounds.width(), max_side),
                               cells_for(bounds.height(), max_side));
}

Mesh mesh_from_triangles(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles) {
  Mesh mesh;
  mesh.vertices = std::move(vertices);
  mesh.triangles = std::move(triangles);
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    for (int v : mesh.triangles[t])
      if (v < 0 || v >= static_cast<int>(mesh.vertices.size()))
        throw ValidationError("mesh_from_triangles: vertex index out of range");
    const auto tri = mesh.triangle(t);
    if (!(signed_area(tri) > 0)) throw ValidationError("mesh_from_triangles: triangle is not counterclockwise");
    for (int k = 0; k < 3; ++k) mesh.h_max = std::max(mesh.h_max, (tri[(k + 1) % 3] - tri[k]).norm());
  }
  build_faces(mesh);
  return mesh;
}

LevelSet disc_level_set(const Vec2& center, double radius) {
  return [center, radius](const Vec2& x) {
    const double dx = x.x() - center.x();
    const double dy = x.y() - center.y();
    return dx * dx + dy * dy - radius * radius;
  };
}

std::string to_string(CellLabel label) {
  switch (label) {
  case CellLabel::Inside: return "inside";
  case CellLabel::Outside: return "outside";
  case CellLabel::Cut: return "cut";
  }
  return "unknown";
}

CutClassification classify_elements(const Mesh& mesh, const LevelSet& phi, const ClassifyOptions& options) {
  CutClassification out;
  const auto n_tri = mesh.num_triangles();
  out.vertex_phi.resize(mesh.num_vertices());
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) out.vertex_phi[v] = phi(mesh.vertices[v]);

  out.labels.assign(n_tri, CellLabel::Outside);
  out.cut_slot.assign(n_tri, -1);
  for (std::size_t t = 0; t < n_tri; ++t) {
    const auto& ids = mesh.triangles[t];
    const auto values = perturb_zero_values<double>(
        {out.vertex_phi[ids[0]], out.vertex_phi[ids[1]], out.vertex_phi[ids[2]]});
    const int n_neg = (values[0] < 0) + (values[1] < 0) + (values[2] < 0);
    if (n_neg == 3) {
      out.labels[t] = CellLabel::Inside;
    } else if (n_neg > 0) {
      const auto tri = mesh.triangle(t);
      auto cut = intersect_element(tri, values);
      if (cut.inside_area() < options.tiny_cut_fraction * signed_area(tri)) continue;
      cut.parent = static_cast<std::int64_t>(t);
      out.labels[t] = CellLabel::Cut;
      out.cut_slot[t] = static_cast<int>(out.cuts.size());
      out.cut_set.push_back(static_cast<int>(t));
      out.cuts.push_back(std::move(cut));
    }
    if (out.labels[t] != CellLabel::Outside) out.active.push_back(static_cast<int>(t));
  }

  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto& face = mesh.faces[f];
    if (face.is_boundary()) continue;
    const int k0 = face.triangles[0], k1 = face.triangles[1];
    if (!out.is_active(k0) || !out.is_active(k1)) continue;
    if (out.is_cut(k0) || out.is_cut(k1)) out.ghost_faces.push_back(static_cast<int>(f));
  }
  return out;
}

std::string classification_csv(const CutClassification& classification) {
  std::ostringstream os;
  os << "element_index,label\n";
  for (std::size_t t = 0; t < classification.labels.size(); ++t)
    os << t << ',' << to_string(classification.labels[t]) << '\n';
  return os.str();
}

} // namespace cutfem
