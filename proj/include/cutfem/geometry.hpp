#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cutfem/errors.hpp"
#include "cutfem/types.hpp"

namespace cutfem {

// ---------------------------------------------------------------------------
// Element-level kernels (scalar templated, header only)
// ---------------------------------------------------------------------------

template <typename Scalar> using TriangleVertices = std::array<Point2<Scalar>, 3>;

template <typename Scalar>
Scalar signed_area(const Point2<Scalar>& a, const Point2<Scalar>& b, const Point2<Scalar>& c) {
  return Scalar(0.5) * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

template <typename Scalar> Scalar signed_area(const TriangleVertices<Scalar>& t) {
  return signed_area(t[0], t[1], t[2]);
}

/// Gradient of the affine interpolant of `values` on triangle `t`.
template <typename Scalar>
Point2<Scalar> linear_gradient(const TriangleVertices<Scalar>& t, const std::array<Scalar, 3>& values) {
  Eigen::Matrix<Scalar, 2, 2> jac;
  jac.col(0) = t[1] - t[0];
  jac.col(1) = t[2] - t[0];
  const Point2<Scalar> rhs(values[1] - values[0], values[2] - values[0]);
  // values(x) = v0 + g . (x - x0)  =>  J^T g = rhs
  return jac.transpose().inverse() * rhs;
}

/// Zero level-set values are moved to the positive side by a relative
/// amount `eps` of the largest magnitude in the triple (1 if all are zero).
template <typename Scalar>
std::array<Scalar, 3> perturb_zero_values(std::array<Scalar, 3> values, Scalar eps = Scalar(1e-12)) {
  Scalar scale = 0;
  for (Scalar v : values) scale = std::max(scale, std::abs(v));
  if (scale == Scalar(0)) scale = Scalar(1);
  for (Scalar& v : values)
    if (v == Scalar(0)) v = eps * scale;
  return values;
}

template <typename Scalar> struct InterfaceSegment {
  Point2<Scalar> a;
  Point2<Scalar> b;
  Point2<Scalar> normal; ///< unit, points from {phi_h < 0} to {phi_h > 0}

  Scalar length() const { return (b - a).norm(); }
};

/// Decomposition of one cut triangle by the zero set of the linear
/// interpolant of its vertex level-set values.
template <typename Scalar> struct CutGeometry {
  std::vector<TriangleVertices<Scalar>> inside_subtriangles;
  std::vector<InterfaceSegment<Scalar>> interface_segments;
  std::int64_t parent = -1;

  Scalar inside_area() const {
    Scalar area = 0;
    for (const auto& t : inside_subtriangles) area += signed_area(t);
    return area;
  }
  Scalar interface_length() const {
    Scalar len = 0;
    for (const auto& s : interface_segments) len += s.length();
    return len;
  }
};

namespace detail {
// Crossing point on edge (p, q). Always evaluated from the lexicographically
// smaller endpoint so that neighbours sharing the edge get identical points.
template <typename Scalar>
Point2<Scalar> edge_crossing(Point2<Scalar> p, Scalar phi_p, Point2<Scalar> q, Scalar phi_q) {
  if (q.x() < p.x() || (q.x() == p.x() && q.y() < p.y())) {
    std::swap(p, q);
    std::swap(phi_p, phi_q);
  }
  return p + (phi_p / (phi_p - phi_q)) * (q - p);
}
} // namespace detail

/// Intersects a counterclockwise triangle with {phi_h < 0}. Zero vertex values
/// are perturbed first; throws GeometryError if all values share one sign.
template <typename Scalar>
CutGeometry<Scalar> intersect_element(const TriangleVertices<Scalar>& tri,
                                      const std::array<Scalar, 3>& vertex_phi) {
  const auto phi = perturb_zero_values(vertex_phi);
  const bool all_neg = phi[0] < 0 && phi[1] < 0 && phi[2] < 0;
  const bool all_pos = phi[0] > 0 && phi[1] > 0 && phi[2] > 0;
  if (all_neg || all_pos)
    throw GeometryError("intersect_element: level set does not change sign on the element");

  // Walk the boundary counterclockwise, collecting inside vertices and
  // crossings; the result is a convex CCW polygon with 3 or 4 vertices.
  std::vector<Point2<Scalar>> polygon;
  std::array<Point2<Scalar>, 2> crossings;
  int n_cross = 0;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    if (phi[i] < 0) polygon.push_back(tri[i]);
    if ((phi[i] < 0) != (phi[j] < 0)) {
      const Point2<Scalar> x = detail::edge_crossing(tri[i], phi[i], tri[j], phi[j]);
      polygon.push_back(x);
      crossings[n_cross++] = x;
    }
  }

  CutGeometry<Scalar> cut;
  for (std::size_t k = 1; k + 1 < polygon.size(); ++k)
    cut.inside_subtriangles.push_back({polygon[0], polygon[k], polygon[k + 1]});

  const Point2<Scalar> grad = linear_gradient(tri, phi);
  cut.interface_segments.push_back({crossings[0], crossings[1], grad / grad.norm()});
  return cut;
}

// ---------------------------------------------------------------------------
// Background mesh and cut classification
// ---------------------------------------------------------------------------

struct Rect {
  Vec2 lo;
  Vec2 hi;
  double width() const { return hi.x() - lo.x(); }
  double height() const { return hi.y() - lo.y(); }
};

struct Face {
  std::array<int, 2> vertices;
  std::array<int, 2> triangles{-1, -1}; ///< second entry is -1 on the outer boundary
  bool is_boundary() const { return triangles[1] < 0; }
};

/// Structured triangulation: nx by ny rectangular cells, each split by the
/// diagonal from its lower-left to its upper-right corner.
struct Mesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<Face> faces;
  std::vector<std::array<int, 3>> triangle_faces; ///< face opposite to local vertex k is entry k
  double h_max = 0;
  int nx = 0;
  int ny = 0;
  Rect bounds{};

  std::size_t num_vertices() const { return vertices.size(); }
  std::size_t num_triangles() const { return triangles.size(); }
  TriangleVertices<double> triangle(std::size_t t) const {
    const auto& ids = triangles[t];
    return {vertices[ids[0]], vertices[ids[1]], vertices[ids[2]]};
  }
};

/// Picks the smallest cell counts whose split-cell diameter does not exceed
/// `target_h`. Throws ValidationError for non-positive target_h, a degenerate
/// rectangle, or target_h above sqrt(2) times the shorter side.
Mesh build_background_mesh(const Rect& bounds, double target_h);

/// Same triangulation pattern with explicit cell counts.
Mesh build_structured_mesh(const Rect& bounds, int nx, int ny);

/// Mesh from explicit counterclockwise triangles; faces and h_max are derived.
/// Throws ValidationError for a non-positive triangle area.
Mesh mesh_from_triangles(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles);

/// Negative inside the domain, zero on its boundary, positive outside.
using LevelSet = std::function<double(const Vec2&)>;

/// (x - cx)^2 + (y - cy)^2 - r^2.
LevelSet disc_level_set(const Vec2& center = Vec2::Zero(), double radius = 1.0);

enum class CellLabel : std::uint8_t { Inside, Outside, Cut };

std::string to_string(CellLabel label);

struct ClassifyOptions {
  /// Cut elements whose inside area is below this fraction of the element
  /// area are reclassified Outside.
  double tiny_cut_fraction = 1e-12;
};

struct CutClassification {
  std::vector<CellLabel> labels;
  std::vector<int> active;      ///< Inside and Cut elements, ascending
  std::vector<int> cut_set;     ///< Cut elements, ascending
  std::vector<int> ghost_faces; ///< faces of cut elements with two active neighbours
  std::vector<int> cut_slot;    ///< per element: index into cut_set / cuts, or -1
  std::vector<CutGeometry<double>> cuts; ///< aligned with cut_set
  std::vector<double> vertex_phi;        ///< raw level-set value at each mesh vertex

  bool is_active(int element) const { return labels[element] != CellLabel::Outside; }
  bool is_cut(int element) const { return labels[element] == CellLabel::Cut; }
  const CutGeometry<double>* geometry_of(int element) const {
    const int slot = cut_slot[element];
    return slot < 0 ? nullptr : &cuts[slot];
  }
};

CutClassification classify_elements(const Mesh& mesh, const LevelSet& phi,
                                    const ClassifyOptions& options = {});

/// Debug dump: one `element_index,label` line per element.
std::string classification_csv(const CutClassification& classification);

} // namespace cutfem
