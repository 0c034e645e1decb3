#pragma once

#include <cmath>
#include <vector>

#include "cutfem/errors.hpp"
#include "cutfem/geometry.hpp"
#include "cutfem/types.hpp"

namespace cutfem {

/// Rule on the reference triangle {(0,0),(1,0),(0,1)}; weights sum to 1/2.
template <typename Scalar> struct TriangleRule {
  std::vector<Point2<Scalar>> points;
  std::vector<Scalar> weights;
  int exact_degree = 0;

  std::size_t size() const { return weights.size(); }
};

/// Rule on [0, 1]; weights sum to 1.
template <typename Scalar> struct SegmentRule {
  std::vector<Scalar> points;
  std::vector<Scalar> weights;
  int exact_degree = 0;

  std::size_t size() const { return weights.size(); }
};

namespace detail {

template <typename Scalar> struct SymmetricBuilder {
  TriangleRule<Scalar> rule;

  void centroid(Scalar w) { push(Scalar(1) / 3, Scalar(1) / 3, w); }
  // barycentric orbit (a, a, 1 - 2a)
  void orbit3(Scalar a, Scalar w) {
    const Scalar b = 1 - 2 * a;
    push(a, a, w);
    push(a, b, w);
    push(b, a, w);
  }
  // barycentric orbit of (a, b, 1 - a - b), all distinct
  void orbit6(Scalar a, Scalar b, Scalar w) {
    const Scalar c = 1 - a - b;
    push(a, b, w);
    push(b, a, w);
    push(a, c, w);
    push(c, a, w);
    push(b, c, w);
    push(c, b, w);
  }
  // weights are given normalised to unit area
  void push(Scalar x, Scalar y, Scalar w) {
    rule.points.emplace_back(x, y);
    rule.weights.push_back(w / 2);
  }
};

} // namespace detail

/// Symmetric positive-weight rule on the reference triangle with
/// exact_degree >= degree, for 1 <= degree <= 6.
template <typename Scalar = double> TriangleRule<Scalar> triangle_rule(int degree) {
  detail::SymmetricBuilder<Scalar> b;
  switch (degree) {
  case 1:
    b.centroid(1);
    b.rule.exact_degree = 1;
    break;
  case 2: // edge midpoints
    b.orbit3(Scalar(0.5), Scalar(1) / 3);
    b.rule.exact_degree = 2;
    break;
  case 3:
  case 4:
    b.orbit3(Scalar(0.445948490915965), Scalar(0.223381589678011));
    b.orbit3(Scalar(0.091576213509771), Scalar(0.109951743655322));
    b.rule.exact_degree = 4;
    break;
  case 5: {
    using std::sqrt;
    const Scalar s15 = sqrt(Scalar(15));
    b.centroid(Scalar(9) / 40);
    b.orbit3((6 - s15) / 21, (155 - s15) / 1200);
    b.orbit3((6 + s15) / 21, (155 + s15) / 1200);
    b.rule.exact_degree = 5;
    break;
  }
  case 6:
    b.orbit3(Scalar(0.249286745170910), Scalar(0.116786275726379));
    b.orbit3(Scalar(0.063089014491502), Scalar(0.050844906370207));
    b.orbit6(Scalar(0.053145049844817), Scalar(0.310352451033784), Scalar(0.082851075618374));
    b.rule.exact_degree = 6;
    break;
  default:
    throw ValidationError("triangle_rule: supported degrees are 1..6");
  }
  return b.rule;
}

/// Gauss-Legendre rule on [0, 1] with exact_degree >= degree, 1 <= degree <= 6.
template <typename Scalar = double> SegmentRule<Scalar> segment_rule(int degree) {
  using std::sqrt;
  if (degree < 1 || degree > 6) throw ValidationError("segment_rule: supported degrees are 1..6");
  SegmentRule<Scalar> rule;
  // nodes/weights on [-1, 1]
  std::vector<Scalar> x, w;
  const int n = (degree + 2) / 2;
  switch (n) {
  case 1:
    x = {Scalar(0)};
    w = {Scalar(2)};
    break;
  case 2:
    x = {-1 / sqrt(Scalar(3)), 1 / sqrt(Scalar(3))};
    w = {Scalar(1), Scalar(1)};
    break;
  case 3:
    x = {-sqrt(Scalar(3) / 5), Scalar(0), sqrt(Scalar(3) / 5)};
    w = {Scalar(5) / 9, Scalar(8) / 9, Scalar(5) / 9};
    break;
  default: {
    const Scalar r = 2 * sqrt(Scalar(6) / 5) / 7;
    const Scalar outer = sqrt(Scalar(3) / 7 + r), inner = sqrt(Scalar(3) / 7 - r);
    const Scalar s30 = sqrt(Scalar(30));
    x = {-outer, -inner, inner, outer};
    w = {(18 - s30) / 36, (18 + s30) / 36, (18 + s30) / 36, (18 - s30) / 36};
  }
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    rule.points.push_back((1 + x[i]) / 2);
    rule.weights.push_back(w[i] / 2);
  }
  rule.exact_degree = 2 * n - 1;
  return rule;
}

// ---------------------------------------------------------------------------
// Physical quadrature points
// ---------------------------------------------------------------------------

struct VolumePoint {
  Vec2 x;
  double weight;
};

struct InterfacePoint {
  Vec2 x;
  double weight;
  Vec2 normal;
};

/// Calls `visit(x, weight)` for every rule point mapped onto triangle `t`.
template <typename Visitor>
void for_each_point_on_triangle(const TriangleVertices<double>& t, const TriangleRule<double>& rule,
                                Visitor&& visit) {
  const Vec2 e1 = t[1] - t[0];
  const Vec2 e2 = t[2] - t[0];
  const double det = std::abs(e1.x() * e2.y() - e1.y() * e2.x());
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Vec2 x = t[0] + rule.points[q].x() * e1 + rule.points[q].y() * e2;
    visit(x, rule.weights[q] * det);
  }
}

/// Visits the quadrature points of element ∩ {phi_h < 0}: the full element
/// if Inside, the inside sub-triangles if Cut, nothing if Outside.
template <typename Visitor>
void for_each_volume_point(const TriangleVertices<double>& element, CellLabel label,
                           const CutGeometry<double>* cut, const TriangleRule<double>& rule,
                           Visitor&& visit) {
  switch (label) {
  case CellLabel::Outside: return;
  case CellLabel::Inside: for_each_point_on_triangle(element, rule, visit); return;
  case CellLabel::Cut:
    if (cut == nullptr) throw ValidationError("volume quadrature: cut element without CutGeometry");
    for (const auto& sub : cut->inside_subtriangles) for_each_point_on_triangle(sub, rule, visit);
    return;
  }
}

/// Calls `visit(x, weight, normal)` along every interface segment.
template <typename Visitor>
void for_each_interface_point(const CutGeometry<double>& cut, const SegmentRule<double>& rule,
                              Visitor&& visit) {
  for (const auto& seg : cut.interface_segments) {
    const double len = seg.length();
    for (std::size_t q = 0; q < rule.size(); ++q)
      visit(Vec2(seg.a + rule.points[q] * (seg.b - seg.a)), rule.weights[q] * len, seg.normal);
  }
}

inline std::vector<VolumePoint> physical_volume_points(const TriangleVertices<double>& element,
                                                       CellLabel label, const CutGeometry<double>* cut,
                                                       const TriangleRule<double>& rule) {
  std::vector<VolumePoint> out;
  for_each_volume_point(element, label, cut, rule,
                        [&](const Vec2& x, double w) { out.push_back({x, w}); });
  return out;
}

inline std::vector<InterfacePoint> physical_interface_points(const CutGeometry<double>& cut,
                                                             const SegmentRule<double>& rule) {
  std::vector<InterfacePoint> out;
  for_each_interface_point(cut, rule, [&](const Vec2& x, double w, const Vec2& n) {
    out.push_back({x, w, n});
  });
  return out;
}

/// Quadrature degrees used by assembly and error evaluation.
struct QuadratureOptions {
  int volume_degree = 4;
  int interface_degree = 2;
  int error_degree = 4;
};

} // namespace cutfem
