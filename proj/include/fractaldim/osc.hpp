#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fractaldim/common.hpp"
#include "fractaldim/ifs.hpp"
#include "fractaldim/similarity.hpp"

namespace fractaldim {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

namespace detail {

inline double cross2(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace detail

// Counter-clockwise strictly convex polygon, interpreted as the OPEN region
// bounded by its hull.
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Point2> vertices)
      : vertices_(std::move(vertices)) {
    const std::size_t m = vertices_.size();
    if (m < 3) throw invalid_input("polygon: need at least 3 vertices");
    double area2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const Point2& a = vertices_[i];
      const Point2& b = vertices_[(i + 1) % m];
      const Point2& c = vertices_[(i + 2) % m];
      if (!(detail::cross2(a, b, c) > kGeomTol))
        throw invalid_input(
            "polygon: vertices must be strictly convex in counter-clockwise "
            "order (violated at vertex " + std::to_string((i + 1) % m) + ")");
      area2 += a.x * b.y - b.x * a.y;
    }
    area_ = 0.5 * area2;
    if (!(area_ > kGeomTol)) throw invalid_input("polygon: degenerate area");
  }

  const std::vector<Point2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  double area() const { return area_; }

 private:
  std::vector<Point2> vertices_;
  double area_ = 0.0;
};

// Similarity image of a polygon; reflections reverse the vertex order, which
// is restored here so the result stays counter-clockwise.
inline ConvexPolygon image_polygon(const Similarity& sim,
                                   const ConvexPolygon& poly) {
  if (sim.dim() != 2) throw invalid_input("image_polygon: similarity must be 2-D");
  std::vector<Point2> out;
  out.reserve(poly.size());
  for (const Point2& v : poly.vertices()) {
    const Vec w = sim(Vec{v.x, v.y});
    out.push_back({w[0], w[1]});
  }
  const Mat& q = sim.ortho();
  const double det = q(0, 0) * q(1, 1) - q(0, 1) * q(1, 0);
  if (det < 0.0) std::reverse(out.begin(), out.end());
  return ConvexPolygon(std::move(out));
}

struct ContainsResult {
  bool contained = false;
  double margin = 0.0;  // min signed distance of inner vertices to the boundary
  std::optional<Point2> witness;  // first vertex outside, when not contained
};

// Closed-hull containment: every vertex of inner on or inside outer. For
// convex inner and outer this is equivalent to hull inclusion.
inline ContainsResult contains_open(const ConvexPolygon& outer,
                                    const ConvexPolygon& inner) {
  ContainsResult res;
  res.margin = std::numeric_limits<double>::infinity();
  const auto& ov = outer.vertices();
  for (const Point2& v : inner.vertices()) {
    double sd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ov.size(); ++i) {
      const Point2& a = ov[i];
      const Point2& b = ov[(i + 1) % ov.size()];
      const double len = std::hypot(b.x - a.x, b.y - a.y);
      sd = std::min(sd, detail::cross2(a, b, v) / len);
    }
    if (sd < res.margin) res.margin = sd;
    if (sd < -kGeomTol && !res.witness) res.witness = v;
  }
  res.contained = !res.witness.has_value();
  return res;
}

namespace detail {

// Intersection of two convex polygons by half-plane clipping (inclusive).
// Returns the vertex ring, possibly empty.
inline std::vector<Point2> clip_convex(const ConvexPolygon& subject,
                                       const ConvexPolygon& clip) {
  std::vector<Point2> poly = subject.vertices();
  const auto& cv = clip.vertices();
  for (std::size_t i = 0; i < cv.size() && !poly.empty(); ++i) {
    const Point2& a = cv[i];
    const Point2& b = cv[(i + 1) % cv.size()];
    std::vector<Point2> next;
    for (std::size_t j = 0; j < poly.size(); ++j) {
      const Point2& p = poly[j];
      const Point2& q = poly[(j + 1) % poly.size()];
      const double dp = cross2(a, b, p);
      const double dq = cross2(a, b, q);
      if (dp >= 0.0) next.push_back(p);
      if ((dp > 0.0 && dq < 0.0) || (dp < 0.0 && dq > 0.0)) {
        const double t = dp / (dp - dq);
        next.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
      }
    }
    poly.swap(next);
  }
  return poly;
}

inline Point2 ring_centroid(const std::vector<Point2>& ring) {
  double a2 = 0.0, cx = 0.0, cy = 0.0;
  const std::size_t m = ring.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point2& p = ring[i];
    const Point2& q = ring[(i + 1) % m];
    const double w = p.x * q.y - q.x * p.y;
    a2 += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  if (std::abs(a2) < 1e-300) {  // nearly degenerate ring: fall back to the mean
    Point2 c;
    for (const Point2& p : ring) {
      c.x += p.x / m;
      c.y += p.y / m;
    }
    return c;
  }
  return {cx / (3.0 * a2), cy / (3.0 * a2)};
}

}  // namespace detail

struct DisjointResult {
  bool disjoint = false;
  double separation = 0.0;  // best axis gap; negative values are overlap depth
  std::optional<Point2> witness;  // interior overlap point, when not disjoint
};

// Separating-axis test over the edge normals of both polygons. Touching
// boundaries count as disjoint (the certified sets are open): an axis gap
// down to -kGeomTol passes.
inline DisjointResult interiors_disjoint(const ConvexPolygon& a,
                                         const ConvexPolygon& b) {
  DisjointResult res;
  res.separation = -std::numeric_limits<double>::infinity();
  const auto axis_gap = [](const ConvexPolygon& edges, const ConvexPolygon& other,
                           double& best) {
    const auto& ev = edges.vertices();
    for (std::size_t i = 0; i < ev.size(); ++i) {
      const Point2& p = ev[i];
      const Point2& q = ev[(i + 1) % ev.size()];
      const double len = std::hypot(q.x - p.x, q.y - p.y);
      const double nx = (q.y - p.y) / len;  // outward normal of a CCW edge
      const double ny = -(q.x - p.x) / len;
      double gap = std::numeric_limits<double>::infinity();
      for (const Point2& v : other.vertices())
        gap = std::min(gap, nx * (v.x - p.x) + ny * (v.y - p.y));
      best = std::max(best, gap);
    }
  };
  axis_gap(a, b, res.separation);
  axis_gap(b, a, res.separation);
  res.disjoint = res.separation >= -kGeomTol;
  if (!res.disjoint) {
    const std::vector<Point2> overlap = detail::clip_convex(b, a);
    if (!overlap.empty()) res.witness = detail::ring_centroid(overlap);
  }
  return res;
}

struct Violation {
  enum class Kind { containment, overlap };
  Kind kind = Kind::containment;
  int i = 0;  // 1-based map index
  int j = 0;  // second map index for overlaps, 0 otherwise
  std::optional<Point2> witness;
  std::string detail;
};

struct CertificateVerdict {
  bool holds = false;
  std::vector<Violation> violations;
  double min_containment_margin = 0.0;
  std::optional<double> min_separation;  // absent when k = 1 (no pairs)
};

// Full open-set-condition check of a candidate V: f_i(V) inside V for every
// map and pairwise disjoint images. All violations are collected; nothing
// short-circuits.
inline CertificateVerdict verify_certificate(const Ifs& ifs,
                                             const ConvexPolygon& candidate) {
  if (ifs.dim() != 2)
    throw invalid_input("certificate verification requires d = 2");
  std::vector<ConvexPolygon> images;
  images.reserve(ifs.k());
  for (const Similarity& f : ifs.maps())
    images.push_back(image_polygon(f, candidate));

  CertificateVerdict verdict;
  verdict.min_containment_margin = std::numeric_limits<double>::infinity();
  for (std::uint32_t i = 0; i < ifs.k(); ++i) {
    const ContainsResult c = contains_open(candidate, images[i]);
    verdict.min_containment_margin =
        std::min(verdict.min_containment_margin, c.margin);
    if (!c.contained) {
      Violation v;
      v.kind = Violation::Kind::containment;
      v.i = static_cast<int>(i) + 1;
      v.witness = c.witness;
      v.detail = "image of map " + std::to_string(i + 1) +
                 " leaves the candidate polygon (margin " +
                 std::to_string(c.margin) + ")";
      verdict.violations.push_back(std::move(v));
    }
  }
  for (std::uint32_t i = 0; i < ifs.k(); ++i) {
    for (std::uint32_t j = i + 1; j < ifs.k(); ++j) {
      const DisjointResult r = interiors_disjoint(images[i], images[j]);
      if (!verdict.min_separation || r.separation < *verdict.min_separation)
        verdict.min_separation = r.separation;
      if (!r.disjoint) {
        Violation v;
        v.kind = Violation::Kind::overlap;
        v.i = static_cast<int>(i) + 1;
        v.j = static_cast<int>(j) + 1;
        v.witness = r.witness;
        v.detail = "images of maps " + std::to_string(i + 1) + " and " +
                   std::to_string(j + 1) + " overlap with depth " +
                   std::to_string(-r.separation);
        verdict.violations.push_back(std::move(v));
      }
    }
  }
  verdict.holds = verdict.violations.empty();
  return verdict;
}

}  // namespace fractaldim
