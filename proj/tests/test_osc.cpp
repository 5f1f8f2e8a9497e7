#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "testutil.hpp"

using namespace fractaldim;

namespace {

Ifs sierpinski() {
  Mat id = Mat::identity(2);
  return Ifs({
      Similarity(0.5, id, {0.0, 0.0}),
      Similarity(0.5, id, {0.5, 0.0}),
      Similarity(0.5, id, {0.25, 0.5}),
  });
}

ConvexPolygon triangle() {
  return ConvexPolygon({{0.0, 0.0}, {1.0, 0.0}, {0.5, 1.0}});
}

Ifs overlap_plane() {
  Mat id = Mat::identity(2);
  double r = 2.0 / 3.0;
  return Ifs({Similarity(r, id, {0.0, 0.0}), Similarity(r, id, {1.0 / 3.0, 0.0})});
}

// Uniform sample from a convex polygon: pick a fan triangle by area, then a
// uniform point in it.
Point2 sample_in(const ConvexPolygon& poly, std::mt19937_64& gen) {
  const auto& v = poly.vertices();
  std::vector<double> areas;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    double a = 0.5 * std::abs((v[i].x - v[0].x) * (v[i + 1].y - v[0].y) -
                              (v[i].y - v[0].y) * (v[i + 1].x - v[0].x));
    areas.push_back(a);
  }
  std::discrete_distribution<std::size_t> pick(areas.begin(), areas.end());
  std::size_t t = pick(gen) + 1;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double r1 = std::sqrt(unit(gen)), r2 = unit(gen);
  double w0 = 1.0 - r1, w1 = r1 * (1.0 - r2), w2 = r1 * r2;
  return {w0 * v[0].x + w1 * v[t].x + w2 * v[t + 1].x,
          w0 * v[0].y + w1 * v[t].y + w2 * v[t + 1].y};
}

// Strict interior test by signed distances to every edge of a CCW polygon.
bool strictly_inside(const ConvexPolygon& poly, Point2 p, double margin) {
  const auto& v = poly.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % v.size()];
    double len = std::hypot(b.x - a.x, b.y - a.y);
    double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (cross / len <= margin) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("convex polygon construction") {
  CHECK_NOTHROW(triangle());
  CHECK_THROWS_AS(ConvexPolygon({{0.0, 0.0}, {1.0, 0.0}}), invalid_input);
  // Clockwise order is rejected rather than silently reoriented.
  CHECK_THROWS_AS(ConvexPolygon({{0.0, 0.0}, {0.5, 1.0}, {1.0, 0.0}}),
                  invalid_input);
  // Collinear triple.
  CHECK_THROWS_AS(ConvexPolygon({{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}, {0.5, 1.0}}),
                  invalid_input);
  // Non-convex quad.
  CHECK_THROWS_AS(
      ConvexPolygon({{0.0, 0.0}, {1.0, 0.0}, {0.1, 0.1}, {0.0, 1.0}}),
      invalid_input);
  CHECK_THAT(triangle().area(), Catch::Matchers::WithinRel(0.5, 1e-12));
}

TEST_CASE("image polygon maps vertices and preserves orientation") {
  Ifs ifs = sierpinski();
  ConvexPolygon img = image_polygon(ifs.map(2), triangle());
  REQUIRE(img.size() == 3);
  CHECK_THAT(img.vertices()[0].x, Catch::Matchers::WithinAbs(0.5, 1e-15));
  CHECK_THAT(img.area(), Catch::Matchers::WithinRel(0.125, 1e-12));

  // A reflection flips orientation; the image must still be a valid CCW
  // polygon with the same area scale.
  Mat reflect = Mat::identity(2);
  reflect(1, 1) = -1.0;
  Similarity mirror(0.5, reflect, {0.0, 2.0});
  ConvexPolygon mimg = image_polygon(mirror, triangle());
  CHECK_THAT(mimg.area(), Catch::Matchers::WithinRel(0.125, 1e-12));
}

TEST_CASE("open containment with margins and witnesses") {
  ConvexPolygon outer = triangle();
  Ifs ifs = sierpinski();

  ContainsResult touch = contains_open(outer, image_polygon(ifs.map(1), outer));
  CHECK(touch.contained);
  CHECK_THAT(touch.margin, Catch::Matchers::WithinAbs(0.0, 1e-12));

  ConvexPolygon inner({{0.3, 0.2}, {0.6, 0.2}, {0.45, 0.5}});
  ContainsResult strict = contains_open(outer, inner);
  CHECK(strict.contained);
  CHECK(strict.margin > 0.05);

  ConvexPolygon poking({{0.3, 0.2}, {1.6, 0.2}, {0.45, 0.5}});
  ContainsResult out = contains_open(outer, poking);
  CHECK_FALSE(out.contained);
  CHECK(out.margin < 0.0);
  REQUIRE(out.witness.has_value());
  CHECK(out.witness->x == 1.6);
}

TEST_CASE("interior disjointness: separation, touching, and overlap") {
  ConvexPolygon a({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
  ConvexPolygon far({{3.0, 0.0}, {4.0, 0.0}, {4.0, 1.0}, {3.0, 1.0}});
  DisjointResult d = interiors_disjoint(a, far);
  CHECK(d.disjoint);
  CHECK_THAT(d.separation, Catch::Matchers::WithinRel(2.0, 1e-12));

  ConvexPolygon touching({{1.0, 0.0}, {2.0, 0.0}, {2.0, 1.0}, {1.0, 1.0}});
  DisjointResult t = interiors_disjoint(a, touching);
  CHECK(t.disjoint);
  CHECK_THAT(t.separation, Catch::Matchers::WithinAbs(0.0, 1e-12));

  ConvexPolygon shifted({{0.5, 0.5}, {1.5, 0.5}, {1.5, 1.5}, {0.5, 1.5}});
  DisjointResult o = interiors_disjoint(a, shifted);
  CHECK_FALSE(o.disjoint);
  CHECK(o.separation < 0.0);
  REQUIRE(o.witness.has_value());
  CHECK(strictly_inside(a, *o.witness, 1e-9));
  CHECK(strictly_inside(shifted, *o.witness, 1e-9));
}

TEST_CASE("vertex to vertex touching counts as disjoint") {
  ConvexPolygon t1({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
  ConvexPolygon t2({{1.0, 0.0}, {2.0, 0.0}, {2.0, 1.0}});
  DisjointResult d = interiors_disjoint(t1, t2);
  CHECK(d.disjoint);
  CHECK(d.separation >= -1e-12);
}

TEST_CASE("sierpinski certificate verifies with touch-only contacts") {
  CertificateVerdict v = verify_certificate(sierpinski(), triangle());
  CHECK(v.holds);
  CHECK(v.violations.empty());
  CHECK_THAT(v.min_containment_margin, Catch::Matchers::WithinAbs(0.0, 1e-12));
  REQUIRE(v.min_separation.has_value());
  CHECK_THAT(*v.min_separation, Catch::Matchers::WithinAbs(0.0, 1e-12));
}

TEST_CASE("overlapping pair is rejected with an interior witness") {
  ConvexPolygon rect({{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.5}, {0.0, 0.5}});
  Ifs ifs = overlap_plane();
  CertificateVerdict v = verify_certificate(ifs, rect);
  CHECK_FALSE(v.holds);
  REQUIRE(v.violations.size() == 1);
  const Violation& viol = v.violations[0];
  CHECK(viol.kind == Violation::Kind::overlap);
  CHECK(viol.i == 1);
  CHECK(viol.j == 2);
  REQUIRE(viol.witness.has_value());
  CHECK(strictly_inside(image_polygon(ifs.map(1), rect), *viol.witness, 1e-9));
  CHECK(strictly_inside(image_polygon(ifs.map(2), rect), *viol.witness, 1e-9));
}

TEST_CASE("containment violations are reported per map") {
  Mat id = Mat::identity(2);
  // Second map pushes its image outside the unit square.
  Ifs ifs({Similarity(0.5, id, {0.0, 0.0}), Similarity(0.5, id, {0.9, 0.0})});
  ConvexPolygon square({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
  CertificateVerdict v = verify_certificate(ifs, square);
  CHECK_FALSE(v.holds);
  bool saw_containment = false;
  for (const auto& viol : v.violations)
    if (viol.kind == Violation::Kind::containment && viol.i == 2)
      saw_containment = true;
  CHECK(saw_containment);
}

TEST_CASE("single map certificate holds without pair checks") {
  Mat id = Mat::identity(2);
  Ifs one({Similarity(0.5, id, {0.25, 0.25})});
  ConvexPolygon square({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
  CertificateVerdict v = verify_certificate(one, square);
  CHECK(v.holds);
  CHECK_FALSE(v.min_separation.has_value());
}

TEST_CASE("verification requires a planar system") {
  Mat id = Mat::identity(3);
  Ifs solid({Similarity(0.5, id, {0.0, 0.0, 0.0}),
             Similarity(0.5, id, {0.5, 0.0, 0.0})});
  CHECK_THROWS_AS(verify_certificate(solid, triangle()), invalid_input);
}

TEST_CASE("verdict is invariant under relabeling of the maps") {
  Mat id = Mat::identity(2);
  Similarity a(0.5, id, {0.0, 0.0});
  Similarity b(0.5, id, {0.5, 0.0});
  Similarity c(0.5, id, {0.25, 0.5});
  ConvexPolygon cert = triangle();

  CertificateVerdict v1 = verify_certificate(Ifs({a, b, c}), cert);
  CertificateVerdict v2 = verify_certificate(Ifs({c, a, b}), cert);
  CHECK(v1.holds == v2.holds);
  CHECK_THAT(v1.min_containment_margin,
             Catch::Matchers::WithinAbs(v2.min_containment_margin, 1e-12));

  // Duplicate maps overlap; the violation indices track the labels.
  CertificateVerdict dup1 = verify_certificate(Ifs({a, a, b}), cert);
  REQUIRE_FALSE(dup1.holds);
  REQUIRE(dup1.violations.size() == 1);
  CHECK(dup1.violations[0].i == 1);
  CHECK(dup1.violations[0].j == 2);

  CertificateVerdict dup2 = verify_certificate(Ifs({b, a, a}), cert);
  REQUIRE_FALSE(dup2.holds);
  REQUIRE(dup2.violations.size() == 1);
  CHECK(dup2.violations[0].i == 2);
  CHECK(dup2.violations[0].j == 3);
}

TEST_CASE("certificate implies level-2 pairwise disjointness") {
  Ifs ifs = sierpinski();
  REQUIRE(verify_certificate(ifs, triangle()).holds);
  std::vector<ConvexPolygon> images;
  for (std::uint32_t i = 1; i <= 3; ++i)
    for (std::uint32_t j = 1; j <= 3; ++j)
      images.push_back(image_polygon(compose(ifs, Word{{i, j}}), triangle()));
  for (std::size_t p = 0; p < images.size(); ++p)
    for (std::size_t q = p + 1; q < images.size(); ++q)
      REQUIRE(interiors_disjoint(images[p], images[q]).disjoint);
}

TEST_CASE("SAT agrees with a sampling oracle on random pairs") {
  auto gen = testutil::rng(9090);
  int disjoint_pairs = 0;
  for (int rep = 0; rep < 200; ++rep) {
    ConvexPolygon a = testutil::random_convex_polygon(gen);
    ConvexPolygon b = testutil::random_convex_polygon(gen);
    if (rep % 2 == 1) {
      // Half the pairs are forced apart so the disjoint branch is exercised.
      std::vector<Point2> moved;
      for (const auto& v : b.vertices()) moved.push_back({v.x + 4.0, v.y});
      b = ConvexPolygon(moved);
    }
    DisjointResult d = interiors_disjoint(a, b);
    if (d.disjoint) {
      ++disjoint_pairs;
      for (int probe = 0; probe < 10000; ++probe) {
        Point2 p = sample_in(a, gen);
        REQUIRE_FALSE(strictly_inside(b, p, 1e-9));
      }
    }
  }
  CHECK(disjoint_pairs >= 100);
}
