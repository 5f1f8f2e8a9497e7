#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fractaldim {

// Similarity ratios must stay in (0, 1 - kRatioGuard).
inline constexpr double kRatioGuard = 1e-9;
// Entrywise tolerance on |Q^T Q - I| at construction.
inline constexpr double kOrthoTol = 1e-12;
// |S(s) - 1| band inside which the Moran sum counts as exactly 1
// (s usually arrives from a root-finder).
inline constexpr double kRootBand = 1e-12;
// Planar geometry tolerance: SAT overlap depth, convexity cross products.
inline constexpr double kGeomTol = 1e-12;
// Default cap on level / point enumerations (k^n with multiplicity).
inline constexpr std::uint64_t kDefaultEnumCap = 10'000'000;
// Chaos-game burn-in: c_max^64 << 1e-15 for any c <= 0.75.
inline constexpr int kDefaultBurnIn = 64;

struct invalid_input : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Enumeration budget exceeded; carries what would have been needed.
struct cap_exceeded : std::runtime_error {
  int depth;
  double required_log10;  // log10 of the required element count
  std::uint64_t cap;

  cap_exceeded(const std::string& msg, int depth_, double required_log10_,
               std::uint64_t cap_)
      : std::runtime_error(msg),
        depth(depth_),
        required_log10(required_log10_),
        cap(cap_) {}
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }

  Interval scaled(double f) const { return {lo * f, hi * f}; }

  // [lo^s, hi^s]; monotone for nonnegative endpoints and s >= 0.
  Interval pow(double s) const {
    return {std::pow(lo, s), std::pow(hi, s)};
  }
};

// log(sum_i exp(x_i)), safe against underflow of individual terms.
inline double log_sum_exp(const std::vector<double>& xs) {
  if (xs.empty()) return -std::numeric_limits<double>::infinity();
  const double m = *std::max_element(xs.begin(), xs.end());
  if (!std::isfinite(m)) return m;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - m);
  return m + std::log(acc);
}

// Streaming form of log_sum_exp for sums too large to buffer.
class LogSumExpAccumulator {
 public:
  void add(double x) {
    if (x == -std::numeric_limits<double>::infinity()) return;
    if (x > max_) {
      sum_ = sum_ * std::exp(max_ - x) + 1.0;
      max_ = x;
    } else {
      sum_ += std::exp(x - max_);
    }
  }

  double log_sum() const {
    if (sum_ == 0.0) return -std::numeric_limits<double>::infinity();
    return max_ + std::log(sum_);
  }

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
};

// k^n if it fits in uint64, otherwise nothing. n >= 0.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t k, int n) {
  std::uint64_t r = 1;
  for (int i = 0; i < n; ++i) {
    if (k != 0 && r > std::numeric_limits<std::uint64_t>::max() / k)
      return std::nullopt;
    r *= k;
  }
  return r;
}

}  // namespace fractaldim
