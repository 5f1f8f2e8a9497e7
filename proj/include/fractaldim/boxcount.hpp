#pragma once

#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "fractaldim/common.hpp"
#include "fractaldim/generate.hpp"

namespace fractaldim {

namespace detail {

inline std::uint64_t fnv1a64(const unsigned char* data, std::size_t len,
                             std::uint64_t h = 14695981039346656037ull) {
  for (std::size_t i = 0; i < len; ++i) {
    h ^= data[i];
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t hash_cell(const std::int64_t* cell, int d) {
  return fnv1a64(reinterpret_cast<const unsigned char*>(cell),
                 static_cast<std::size_t>(d) * sizeof(std::int64_t));
}

// Cheap diameter upper bound (bounding-box diagonal) for precondition checks
// where the exact diameter would cost a quadratic scan.
inline double bbox_diagonal(const PointCloud& cloud) {
  const int d = cloud.dim();
  std::vector<double> lo(cloud.point(0).begin(), cloud.point(0).end());
  std::vector<double> hi = lo;
  for (std::size_t i = 1; i < cloud.size(); ++i) {
    auto p = cloud.point(i);
    for (int c = 0; c < d; ++c) {
      lo[c] = std::min(lo[c], p[c]);
      hi[c] = std::max(hi[c], p[c]);
    }
  }
  double s = 0.0;
  for (int c = 0; c < d; ++c) s += (hi[c] - lo[c]) * (hi[c] - lo[c]);
  return std::sqrt(s);
}

}  // namespace detail

struct BoxCounts {
  std::vector<double> scales;
  std::vector<std::uint64_t> grid;     // occupied grid cells per scale
  std::vector<std::uint64_t> packing;  // greedy maximal disjoint-ball packing
};

// Two counters per scale. Grid mode: occupied cells of the axis-aligned grid
// with side delta anchored at the bounding-box min corner. Packing mode:
// first-fit greedy packing of balls of radius delta centered at cloud points,
// disjointness meaning center distance strictly greater than 2*delta.
inline BoxCounts box_count(const PointCloud& cloud,
                           const std::vector<double>& scales) {
  if (cloud.size() == 0) throw invalid_input("box_count: empty cloud");
  if (scales.empty()) throw invalid_input("box_count: no scales given");
  for (std::size_t i = 0; i + 1 < scales.size(); ++i)
    if (!(scales[i] > scales[i + 1]))
      throw invalid_input("box_count: scales must be strictly decreasing");
  // exact diameter where cheap; bounding-box diagonal upper bound otherwise
  const double diam_ub =
      cloud.dim() <= 2 ? cloud_diameter(cloud) : detail::bbox_diagonal(cloud);
  const bool degenerate = diam_ub == 0.0;
  for (double s : scales) {
    if (!(s > 0.0)) throw invalid_input("box_count: scales must be positive");
    if (!degenerate && s > diam_ub)
      throw invalid_input("box_count: scale " + std::to_string(s) +
                          " exceeds the cloud diameter");
  }

  const int d = cloud.dim();
  const std::size_t n = cloud.size();
  std::vector<double> anchor(cloud.point(0).begin(), cloud.point(0).end());
  for (std::size_t i = 1; i < n; ++i) {
    auto p = cloud.point(i);
    for (int c = 0; c < d; ++c) anchor[c] = std::min(anchor[c], p[c]);
  }

  BoxCounts out;
  out.scales = scales;
  std::vector<std::int64_t> cells(n * static_cast<std::size_t>(d));
  std::vector<std::uint32_t> order(n);

  for (double delta : scales) {
    // grid mode
    for (std::size_t i = 0; i < n; ++i) {
      auto p = cloud.point(i);
      for (int c = 0; c < d; ++c)
        cells[i * d + c] =
            static_cast<std::int64_t>(std::floor((p[c] - anchor[c]) / delta));
    }
    std::iota(order.begin(), order.end(), 0u);
    const auto row_less = [&](std::uint32_t a, std::uint32_t b) {
      for (int c = 0; c < d; ++c) {
        if (cells[a * static_cast<std::size_t>(d) + c] !=
            cells[b * static_cast<std::size_t>(d) + c])
          return cells[a * static_cast<std::size_t>(d) + c] <
                 cells[b * static_cast<std::size_t>(d) + c];
      }
      return false;
    };
    const auto row_eq = [&](std::uint32_t a, std::uint32_t b) {
      for (int c = 0; c < d; ++c)
        if (cells[a * static_cast<std::size_t>(d) + c] !=
            cells[b * static_cast<std::size_t>(d) + c])
          return false;
      return true;
    };
    std::sort(order.begin(), order.end(), row_less);
    std::uint64_t grid = n > 0 ? 1 : 0;
    for (std::size_t i = 1; i < n; ++i)
      if (!row_eq(order[i - 1], order[i])) ++grid;
    out.grid.push_back(grid);

    // packing mode: spatial hash with cell side 2*delta; any accepted point
    // within distance 2*delta of a candidate shares a cell index within +-1
    // per axis, so scanning the 3^d neighborhood is exhaustive.
    const double side = 2.0 * delta;
    const double r2 = 4.0 * delta * delta;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
    std::vector<std::int64_t> key(d), probe(d);
    std::uint64_t accepted = 0;
    const std::size_t neighborhoods = [&] {
      std::size_t m = 1;
      for (int c = 0; c < d; ++c) m *= 3;
      return m;
    }();
    for (std::size_t i = 0; i < n; ++i) {
      auto p = cloud.point(i);
      for (int c = 0; c < d; ++c)
        key[c] = static_cast<std::int64_t>(std::floor((p[c] - anchor[c]) / side));
      bool free = true;
      for (std::size_t nb = 0; nb < neighborhoods && free; ++nb) {
        std::size_t rem = nb;
        for (int c = 0; c < d; ++c) {
          probe[c] = key[c] + static_cast<std::int64_t>(rem % 3) - 1;
          rem /= 3;
        }
        const auto it = buckets.find(detail::hash_cell(probe.data(), d));
        if (it == buckets.end()) continue;
        for (std::uint32_t j : it->second) {
          auto q = cloud.point(j);
          double dist2 = 0.0;
          for (int c = 0; c < d; ++c) {
            const double diff = p[c] - q[c];
            dist2 += diff * diff;
          }
          if (dist2 <= r2) {
            free = false;
            break;
          }
        }
      }
      if (free) {
        buckets[detail::hash_cell(key.data(), d)].push_back(
            static_cast<std::uint32_t>(i));
        ++accepted;
      }
    }
    out.packing.push_back(accepted);
  }
  return out;
}

struct BoxFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  std::vector<double> residuals;
  bool degenerate = false;  // all counts equal; slope forced to 0
};

namespace detail {

inline BoxFit fit_loglog(const std::vector<double>& scales,
                         const std::vector<std::uint64_t>& counts) {
  BoxFit fit;
  const std::size_t m = scales.size();
  bool all_equal = true;
  for (std::size_t i = 1; i < m; ++i) all_equal = all_equal && counts[i] == counts[0];
  if (all_equal) {
    fit.degenerate = true;
    fit.intercept = std::log(static_cast<double>(counts[0]));
    fit.residuals.assign(m, 0.0);
    return fit;
  }
  std::vector<double> x(m), y(m);
  for (std::size_t i = 0; i < m; ++i) {
    x[i] = -std::log(scales[i]);
    y[i] = std::log(static_cast<double>(counts[i]));
  }
  const double xm = std::accumulate(x.begin(), x.end(), 0.0) / m;
  const double ym = std::accumulate(y.begin(), y.end(), 0.0) / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxy += (x[i] - xm) * (y[i] - ym);
  }
  fit.slope = sxy / sxx;
  fit.intercept = ym - fit.slope * xm;
  double ss_res = 0.0;
  fit.residuals.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    fit.residuals[i] = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += fit.residuals[i] * fit.residuals[i];
  }
  if (m > 2) fit.stderr_slope = std::sqrt(ss_res / (m - 2) / sxx);
  return fit;
}

}  // namespace detail

struct BoxDimensionEstimate {
  BoxCounts counts;
  BoxFit grid;
  BoxFit packing;
};

inline BoxDimensionEstimate box_dimension_estimate(
    const PointCloud& cloud, const std::vector<double>& scales) {
  if (scales.size() < 4)
    throw invalid_input("box_dimension_estimate: need at least 4 scales");
  BoxDimensionEstimate out;
  out.counts = box_count(cloud, scales);
  out.grid = detail::fit_loglog(out.counts.scales, out.counts.grid);
  out.packing = detail::fit_loglog(out.counts.scales, out.counts.packing);
  return out;
}

// Geometric ladder delta = c_max^m * diam for m = 3..9, aligned with the
// structure's natural levels.
inline std::vector<double> default_scales(double c_max, double diam,
                                          int m_lo = 3, int m_hi = 9) {
  if (!(c_max > 0.0) || !(c_max < 1.0))
    throw invalid_input("default_scales: c_max must lie in (0, 1)");
  if (!(diam > 0.0)) throw invalid_input("default_scales: diam must be positive");
  if (m_lo > m_hi) throw invalid_input("default_scales: empty ladder");
  std::vector<double> out;
  for (int m = m_lo; m <= m_hi; ++m) out.push_back(std::pow(c_max, m) * diam);
  return out;
}

}  // namespace fractaldim
