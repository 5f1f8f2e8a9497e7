#pragma once

#include <string>
#include <vector>

#include "fractaldim/common.hpp"

namespace fractaldim {

inline constexpr double kMoranResidualTol = 1e-12;
inline constexpr double kDefaultMoranTol = 1e-12;
inline constexpr double kMaxMoranTol = 1e-6;

enum class MoranMethod { closed_form, bisection };

inline const char* to_string(MoranMethod m) {
  return m == MoranMethod::closed_form ? "closed-form" : "bisection";
}

struct MoranSolution {
  double s = 0.0;
  double residual = 0.0;  // |sum_i c_i^s - 1| at the returned s
  int iterations = 0;
  MoranMethod method = MoranMethod::closed_form;
};

// Root of sum_i c_i^s = 1. Equal ratios collapse to s = -log k / log c;
// otherwise certified bisection on the strictly decreasing
// g(s) = sum c_i^s - 1 over [0, -log k / log c_max], where the upper end
// satisfies g <= 0 because sum c_i^s <= k c_max^s = 1 there.
inline MoranSolution moran_exponent(const std::vector<double>& ratios,
                                    double tol = kDefaultMoranTol) {
  if (ratios.empty()) throw invalid_input("moran_exponent: need at least one ratio");
  if (!(tol > 0.0) || tol > kMaxMoranTol)
    throw invalid_input("moran_exponent: tol must lie in (0, 1e-6]");
  for (double c : ratios)
    if (!(c > 0.0) || !(c < 1.0 - kRatioGuard))
      throw invalid_input("moran_exponent: ratio " + std::to_string(c) +
                          " outside (0, 1)");

  const std::size_t k = ratios.size();
  const auto g = [&](double s) {
    double acc = 0.0;
    for (double c : ratios) acc += std::pow(c, s);
    return acc - 1.0;
  };

  bool equal = true;
  for (double c : ratios) equal = equal && (c == ratios[0]);
  if (equal) {
    MoranSolution out;
    out.method = MoranMethod::closed_form;
    out.s = k == 1 ? 0.0
                   : -std::log(static_cast<double>(k)) / std::log(ratios[0]);
    out.residual = std::abs(g(out.s));
    return out;
  }

  double lo = 0.0;
  double c_max = ratios[0];
  for (double c : ratios) c_max = std::max(c_max, c);
  double hi = -std::log(static_cast<double>(k)) / std::log(c_max);

  MoranSolution out;
  out.method = MoranMethod::bisection;
  double mid = 0.5 * (lo + hi);
  double res = std::abs(g(mid));
  for (int it = 0; it < 4096; ++it) {
    if (hi - lo <= tol && res <= kMoranResidualTol) break;
    mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    res = std::abs(gm);
    ++out.iterations;
    if (gm > 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi == lo || std::nextafter(lo, hi) == hi) break;
  }
  out.s = 0.5 * (lo + hi);
  out.residual = std::abs(g(out.s));
  return out;
}

}  // namespace fractaldim
