#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "fractaldim/common.hpp"
#include "fractaldim/ifs.hpp"

namespace fractaldim {

struct DeterministicProvenance {
  int depth = 0;
  Vec seed_point;
};

struct ChaosProvenance {
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
};

// Clouds built outside the two generators (controls, fixtures).
struct SyntheticProvenance {
  std::string label;
};

using Provenance =
    std::variant<DeterministicProvenance, ChaosProvenance, SyntheticProvenance>;

// A finite discretization of the attractor: flat row-major storage to keep
// million-point clouds cheap.
class PointCloud {
 public:
  PointCloud(int dim, std::vector<double> coords, Provenance prov)
      : dim_(dim), coords_(std::move(coords)), prov_(std::move(prov)) {
    if (dim_ < 1) throw invalid_input("point cloud: dimension must be >= 1");
    if (coords_.size() % static_cast<std::size_t>(dim_) != 0)
      throw invalid_input("point cloud: coordinate count not a multiple of dim");
  }

  int dim() const { return dim_; }
  std::size_t size() const { return coords_.size() / static_cast<std::size_t>(dim_); }
  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(dim_),
            static_cast<std::size_t>(dim_)};
  }
  const std::vector<double>& coords() const { return coords_; }
  const Provenance& provenance() const { return prov_; }

 private:
  int dim_;
  std::vector<double> coords_;
  Provenance prov_;
};

namespace detail {

inline std::uint64_t require_enum_budget(std::uint32_t k, int depth,
                                         std::uint64_t cap, const char* what) {
  const auto total = checked_pow(k, depth);
  if (!total || *total > cap) {
    const double log10_required = depth * std::log10(static_cast<double>(k));
    throw cap_exceeded(std::string(what) + " at depth " + std::to_string(depth) +
                           " requires k^n = " + std::to_string(k) + "^" +
                           std::to_string(depth) + " ~ 10^" +
                           std::to_string(log10_required) +
                           " elements; cap is " + std::to_string(cap),
                       depth, log10_required, cap);
  }
  return *total;
}

}  // namespace detail

// All k^n images {f_w(x0) : w in I^n}, ordered lexicographically by word.
inline PointCloud deterministic_points(const Ifs& ifs, int depth, const Vec& seed,
                                       std::uint64_t cap = kDefaultEnumCap) {
  if (depth < 0) throw invalid_input("deterministic_points: depth must be >= 0");
  if (static_cast<int>(seed.size()) != ifs.dim())
    throw invalid_input("deterministic_points: seed dimension mismatch");
  detail::require_enum_budget(ifs.k(), depth, cap, "deterministic enumeration");

  const std::size_t d = static_cast<std::size_t>(ifs.dim());
  std::vector<double> cur(seed.begin(), seed.end());
  std::vector<double> next;
  Vec x(d), y(d);
  // One pass per word position; prefixing by every letter keeps lexicographic
  // order because f_w = f_{w1} o (f_{w2..wn}).
  for (int step = 0; step < depth; ++step) {
    next.clear();
    next.reserve(cur.size() * ifs.k());
    for (std::uint32_t letter = 1; letter <= ifs.k(); ++letter) {
      const Similarity& f = ifs.map(letter);
      for (std::size_t p = 0; p + d <= cur.size(); p += d) {
        std::copy(cur.begin() + p, cur.begin() + p + d, x.begin());
        y = f(x);
        next.insert(next.end(), y.begin(), y.end());
      }
    }
    cur.swap(next);
  }
  return PointCloud(ifs.dim(), std::move(cur),
                    DeterministicProvenance{depth, seed});
}

// Default seed: the fixed point of the first map, a point of K, so every
// generated point lies on the attractor.
inline PointCloud deterministic_points(const Ifs& ifs, int depth,
                                       std::uint64_t cap = kDefaultEnumCap) {
  return deterministic_points(ifs, depth, fixed_point(ifs.map(1)), cap);
}

struct ChaosOptions {
  int burn_in = kDefaultBurnIn;
  // Selection weights; default is c_i^d (more uniform coverage of the
  // attractor than uniform picks).
  std::optional<std::vector<double>> weights;
};

// Random iteration from the first map's fixed point. Fully reproducible from
// the seed: uniform doubles come straight from mt19937_64 output, and the
// index is picked by inverse CDF, so no library distribution enters.
inline PointCloud chaos_game(const Ifs& ifs, std::uint64_t count,
                             std::uint64_t rng_seed, ChaosOptions opts = {}) {
  if (count < 1) throw invalid_input("chaos_game: count must be >= 1");
  std::vector<double> w;
  if (opts.weights) {
    w = *opts.weights;
    if (w.size() != ifs.k())
      throw invalid_input("chaos_game: weight count must equal k");
    for (double v : w)
      if (!(v > 0.0)) throw invalid_input("chaos_game: weights must be positive");
  } else {
    for (const auto& m : ifs.maps())
      w.push_back(std::pow(m.ratio(), static_cast<double>(ifs.dim())));
  }
  std::vector<double> cum(w.size());
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    total += w[i];
    cum[i] = total;
  }
  for (double& c : cum) c /= total;
  cum.back() = 1.0;

  std::mt19937_64 rng(rng_seed);
  const auto pick = [&]() -> std::uint32_t {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    std::uint32_t i = 0;
    while (i + 1 < cum.size() && u >= cum[i]) ++i;
    return i + 1;
  };

  Vec x = fixed_point(ifs.map(1));
  for (int i = 0; i < opts.burn_in; ++i) x = ifs.map(pick())(x);

  std::vector<double> coords;
  coords.reserve(count * static_cast<std::size_t>(ifs.dim()));
  for (std::uint64_t i = 0; i < count; ++i) {
    x = ifs.map(pick())(x);
    coords.insert(coords.end(), x.begin(), x.end());
  }
  return PointCloud(ifs.dim(), std::move(coords), ChaosProvenance{rng_seed, count});
}

namespace detail {

// Exact diameter of a planar point set: convex hull (monotone chain) +
// rotating calipers.
inline double planar_diameter(const PointCloud& cloud) {
  const std::size_t n = cloud.size();
  std::vector<std::pair<double, double>> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto p = cloud.point(i);
    pts.emplace_back(p[0], p[1]);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() == 1) return 0.0;

  const auto cross = [](const std::pair<double, double>& o,
                        const std::pair<double, double>& a,
                        const std::pair<double, double>& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
  };
  std::vector<std::pair<double, double>> hull(2 * pts.size());
  std::size_t h = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (h >= 2 && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0) --h;
    hull[h++] = pts[i];
  }
  const std::size_t lower = h + 1;
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    while (h >= lower && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0) --h;
    hull[h++] = pts[i];
  }
  hull.resize(h > 1 ? h - 1 : h);

  double best = 0.0;
  const auto d2 = [](const std::pair<double, double>& a,
                     const std::pair<double, double>& b) {
    const double dx = a.first - b.first, dy = a.second - b.second;
    return dx * dx + dy * dy;
  };
  if (hull.size() <= 2) {
    for (std::size_t i = 0; i < hull.size(); ++i)
      for (std::size_t j = i + 1; j < hull.size(); ++j)
        best = std::max(best, d2(hull[i], hull[j]));
    return std::sqrt(best);
  }
  std::size_t j = 1;
  const std::size_t m = hull.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % m];
    const std::pair<double, double> edge{b.first - a.first, b.second - a.second};
    while (true) {
      const std::size_t jn = (j + 1) % m;
      const double adv = edge.first * (hull[jn].second - hull[j].second) -
                         edge.second * (hull[jn].first - hull[j].first);
      if (adv > 0) j = jn;
      else break;
    }
    best = std::max({best, d2(a, hull[j]), d2(b, hull[j])});
  }
  return std::sqrt(best);
}

}  // namespace detail

// Exact diameter of a finite cloud. Planar clouds go through the hull;
// higher dimensions fall back to the quadratic pairwise scan.
inline double cloud_diameter(const PointCloud& cloud) {
  if (cloud.size() == 0) throw invalid_input("cloud_diameter: empty cloud");
  if (cloud.dim() == 1) {
    double lo = cloud.coords()[0], hi = cloud.coords()[0];
    for (double v : cloud.coords()) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return hi - lo;
  }
  if (cloud.dim() == 2) return detail::planar_diameter(cloud);
  double best = 0.0;
  const std::size_t n = cloud.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto p = cloud.point(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      auto q = cloud.point(j);
      double s = 0.0;
      for (int c = 0; c < cloud.dim(); ++c) {
        const double dd = p[c] - q[c];
        s += dd * dd;
      }
      best = std::max(best, s);
    }
  }
  return std::sqrt(best);
}

struct DiameterBound {
  Interval interval;  // lo <= diam(K) <= hi
  double epsilon = 0.0;  // one-sided Hausdorff gap of the depth-n cloud
  int depth = 0;
};

// Rigorous two-sided bound on diam(K). The depth-n cloud {f_w(x0)} is a
// subset of K whose Hausdorff distance to K is at most
// eps_n = c_max^n * max_i |x0 - f_i(x0)| / (1 - c_max), so
// diam(cloud) <= diam(K) <= diam(cloud) + 2 eps_n.
inline DiameterBound diameter_interval(const Ifs& ifs, int depth,
                                       std::uint64_t cap = kDefaultEnumCap) {
  const Vec x0 = fixed_point(ifs.map(1));
  double d0 = 0.0;
  for (const auto& f : ifs.maps()) d0 = std::max(d0, distance(x0, f(x0)));
  const double eps =
      std::pow(ifs.c_max(), depth) * d0 / (1.0 - ifs.c_max());
  const PointCloud cloud = deterministic_points(ifs, depth, x0, cap);
  const double lo = cloud_diameter(cloud);
  return DiameterBound{{lo, lo + 2.0 * eps}, eps, depth};
}

}  // namespace fractaldim
