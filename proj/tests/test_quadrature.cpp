#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "cutfem/quadrature.hpp"
#include "test_support.hpp"

using namespace cutfem;

namespace {

double weight_sum(const std::vector<double>& w) { return std::accumulate(w.begin(), w.end(), 0.0); }

// Random polynomial of total degree <= d as coefficient table c[a][b] of x^a y^b.
using Poly = std::vector<std::vector<double>>;
Poly random_poly(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  Poly c(d + 1, std::vector<double>(d + 1, 0.0));
  for (int a = 0; a <= d; ++a)
    for (int b = 0; a + b <= d; ++b) c[a][b] = u(rng);
  return c;
}
double eval(const Poly& c, const Vec2& x) {
  double s = 0;
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = 0; a + b < c.size(); ++b) s += c[a][b] * std::pow(x.x(), a) * std::pow(x.y(), b);
  return s;
}

// Exact integral of a polynomial over an affine triangle: pull back to the
// reference element, expand via the binomial theorem for (x0 + J ξ)^a.
double exact_triangle_integral(const Poly& c, const TriangleVertices<double>& t) {
  const Vec2 e1 = t[1] - t[0], e2 = t[2] - t[0];
  const double det = std::abs(e1.x() * e2.y() - e1.y() * e2.x());
  const int d = static_cast<int>(c.size()) - 1;
  // polynomial in (ξ, η): coefficient table q[i][j]
  Poly q(2 * d + 1, std::vector<double>(2 * d + 1, 0.0));
  auto binom = [](int n, int k) { return testing::factorial(n) / (testing::factorial(k) * testing::factorial(n - k)); };
  for (int a = 0; a <= d; ++a) {
    for (int b = 0; a + b <= d; ++b) {
      if (c[a][b] == 0) continue;
      // x = x0 + e1x ξ + e2x η ; expand x^a y^b by trinomials
      for (int i1 = 0; i1 <= a; ++i1)
        for (int j1 = 0; i1 + j1 <= a; ++j1) {
          const int k1 = a - i1 - j1;
          const double cx = binom(a, i1) * binom(a - i1, j1) * std::pow(e1.x(), i1) * std::pow(e2.x(), j1) *
                            std::pow(t[0].x(), k1);
          for (int i2 = 0; i2 <= b; ++i2)
            for (int j2 = 0; i2 + j2 <= b; ++j2) {
              const int k2 = b - i2 - j2;
              const double cy = binom(b, i2) * binom(b - i2, j2) * std::pow(e1.y(), i2) * std::pow(e2.y(), j2) *
                                std::pow(t[0].y(), k2);
              q[i1 + i2][j1 + j2] += c[a][b] * cx * cy;
            }
        }
    }
  }
  double s = 0;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j)
      if (q[i][j] != 0) s += q[i][j] * testing::reference_monomial_integral(static_cast<int>(i), static_cast<int>(j));
  return det * s;
}

} // namespace

TEST_CASE("triangle rule examples") {
  const auto r1 = triangle_rule(1);
  REQUIRE(r1.size() == 1);
  CHECK(r1.weights[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r1.points[0].x() == doctest::Approx(1.0 / 3));

  const auto r2 = triangle_rule(2);
  REQUIRE(r2.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) CHECK(r2.weights[k] == doctest::Approx(1.0 / 6).epsilon(1e-15));

  const auto r4 = triangle_rule(4);
  double x2y = 0;
  for (std::size_t k = 0; k < r4.size(); ++k) x2y += r4.weights[k] * r4.points[k].x() * r4.points[k].x() * r4.points[k].y();
  CHECK(x2y == doctest::Approx(1.0 / 60).epsilon(1e-13));

  CHECK_THROWS_AS(triangle_rule(0), ValidationError);
  CHECK_THROWS_AS(triangle_rule(7), ValidationError);
}

TEST_CASE("segment rule examples") {
  const auto s1 = segment_rule(1);
  REQUIRE(s1.size() == 1);
  CHECK(s1.points[0] == 0.5);
  CHECK(s1.weights[0] == 1.0);

  const auto s3 = segment_rule(3);
  REQUIRE(s3.size() == 2);
  CHECK(s3.points[0] == doctest::Approx(0.5 - 1 / (2 * std::sqrt(3.0))).epsilon(1e-15));
  CHECK(s3.points[1] == doctest::Approx(0.5 + 1 / (2 * std::sqrt(3.0))).epsilon(1e-15));
  double t3 = 0;
  for (std::size_t k = 0; k < 2; ++k) t3 += s3.weights[k] * std::pow(s3.points[k], 3);
  CHECK(std::abs(t3 - 0.25) < 1e-15);

  for (int d = 1; d <= 6; ++d) CHECK(weight_sum(segment_rule(d).weights) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(segment_rule(0), ValidationError);
  CHECK_THROWS_AS(segment_rule(7), ValidationError);
}

TEST_CASE("monomial exactness and positivity") {
  for (int d = 1; d <= 6; ++d) {
    CAPTURE(d);
    const auto rule = triangle_rule(d);
    CHECK(rule.exact_degree >= d);
    CHECK(weight_sum(rule.weights) == doctest::Approx(0.5).epsilon(1e-14));
    for (double w : rule.weights) CHECK(w > 0);
    for (const auto& p : rule.points) CHECK((p.x() >= 0 && p.y() >= 0 && p.x() + p.y() <= 1));
    for (int a = 0; a <= rule.exact_degree; ++a)
      for (int b = 0; a + b <= rule.exact_degree; ++b) {
        double q = 0;
        for (std::size_t k = 0; k < rule.size(); ++k)
          q += rule.weights[k] * std::pow(rule.points[k].x(), a) * std::pow(rule.points[k].y(), b);
        const double exact = testing::reference_monomial_integral(a, b);
        CHECK(std::abs(q - exact) <= 1e-12 * exact);
      }

    const auto seg = segment_rule(d);
    CHECK(seg.exact_degree >= d);
    for (double w : seg.weights) CHECK(w > 0);
    for (int a = 0; a <= seg.exact_degree; ++a) {
      double q = 0;
      for (std::size_t k = 0; k < seg.size(); ++k) q += seg.weights[k] * std::pow(seg.points[k], a);
      CHECK(std::abs(q - 1.0 / (a + 1)) <= 1e-12 / (a + 1));
    }
  }
}

TEST_CASE("exactness on random affine elements") {
  std::mt19937_64 rng(3);
  for (int d = 1; d <= 6; ++d) {
    const auto rule = triangle_rule(d);
    for (int trial = 0; trial < 100; ++trial) {
      const auto t = testing::random_triangle(rng);
      const Poly c = random_poly(rule.exact_degree, rng);
      double q = 0;
      for_each_point_on_triangle(t, rule, [&](const Vec2& x, double w) { q += w * eval(c, x); });
      const double exact = exact_triangle_integral(c, t);
      // scale by the integral of |p| proxy to avoid cancellation near zero
      double scale = 0;
      for_each_point_on_triangle(t, rule, [&](const Vec2& x, double w) { scale += w * std::abs(eval(c, x)); });
      CHECK(std::abs(q - exact) <= 1e-12 * std::max(std::abs(exact), scale));
    }
  }
}

TEST_CASE("physical volume points") {
  const TriangleVertices<double> t{Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)};
  SUBCASE("inside element") {
    const auto pts = physical_volume_points(t, CellLabel::Inside, nullptr, triangle_rule(1));
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].x.x() == doctest::Approx(1.0 / 3));
    CHECK(pts[0].x.y() == doctest::Approx(1.0 / 3));
    CHECK(pts[0].weight == doctest::Approx(0.5));
  }
  SUBCASE("cut element") {
    const auto cut = intersect_element<double>(t, {-0.5, 0.5, -0.5});
    for (int d = 1; d <= 6; ++d) {
      double total = 0;
      for (const auto& p : physical_volume_points(t, CellLabel::Cut, &cut, triangle_rule(d))) total += p.weight;
      CHECK(total == doctest::Approx(0.375).epsilon(1e-14));
    }
    CHECK_THROWS_AS(physical_volume_points(t, CellLabel::Cut, nullptr, triangle_rule(1)), ValidationError);
  }
  SUBCASE("outside element") {
    CHECK(physical_volume_points(t, CellLabel::Outside, nullptr, triangle_rule(4)).empty());
  }
}

TEST_CASE("physical interface points") {
  const TriangleVertices<double> t{Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)};
  const auto cut = intersect_element<double>(t, {-0.5, 0.5, -0.5});
  const auto pts = physical_interface_points(cut, segment_rule(1));
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].x.x() == doctest::Approx(0.5));
  CHECK(pts[0].x.y() == doctest::Approx(0.25));
  CHECK(pts[0].weight == doctest::Approx(0.5));
  CHECK(pts[0].normal.x() == doctest::Approx(1.0));

  for (int d = 1; d <= 6; ++d) {
    double total = 0;
    for (const auto& p : physical_interface_points(cut, segment_rule(d))) total += p.weight;
    CHECK(total == doctest::Approx(cut.interface_length()).epsilon(1e-15));
  }
}

TEST_CASE("cut additivity") {
  std::mt19937_64 rng(11);
  const auto rule = triangle_rule(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = testing::random_triangle(rng);
    const auto phi = testing::random_mixed_signs(rng);
    const auto in = intersect_element(t, phi);
    const auto out = intersect_element<double>(t, {-phi[0], -phi[1], -phi[2]});
    const Poly c = random_poly(4, rng);
    double split = 0, full = 0, scale = 0;
    auto acc = [&](const Vec2& x, double w) { split += w * eval(c, x); };
    for_each_volume_point(t, CellLabel::Cut, &in, rule, acc);
    for_each_volume_point(t, CellLabel::Cut, &out, rule, acc);
    for_each_volume_point(t, CellLabel::Inside, nullptr, rule, [&](const Vec2& x, double w) {
      full += w * eval(c, x);
      scale += w * std::abs(eval(c, x));
    });
    CHECK(std::abs(split - full) <= 1e-12 * std::max(std::abs(full), scale));
  }
}
