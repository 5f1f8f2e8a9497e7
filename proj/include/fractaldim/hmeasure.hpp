#pragma once

#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

#include "fractaldim/antichain.hpp"
#include "fractaldim/common.hpp"
#include "fractaldim/level.hpp"

namespace fractaldim {

// Limit class of H^s_{n,3}(K) as n grows: the value jumps from infinite to
// zero as s crosses the Moran exponent, and is finite exactly at it.
enum class HClass { zero, finite, infinite };

inline const char* to_string(HClass c) {
  switch (c) {
    case HClass::zero: return "zero";
    case HClass::finite: return "finite";
    default: return "infinite";
  }
}

// Sum of the i-th ratios raised to s. S(s) < 1, = 1, > 1 decides everything
// about the third H-functional.
inline double moran_sum(const Ifs& ifs, double s) {
  double acc = 0.0;
  for (double lc : ifs.log_ratios()) acc += std::exp(s * lc);
  return acc;
}

struct HLevelValue {
  HClass cls = HClass::finite;
  Interval value;     // H^s_{n,3}(K), scaled by the diam(K) interval
  double sum_ratio = 0.0;  // S(s)
  int n = 0;
  double s = 0.0;
};

// Closed form of H^s_{n,3}(K) = inf{sum_{A in Gamma_m} diam(A)^s : m >= n}.
// The level-m sum is diam(K)^s * S(s)^m, monotone in m, so the infimum is 0
// when S < 1, diam^s when S = 1 (within the root band), diam^s * S^n when
// S > 1. The S > 1 case is the at-level value; the limit class is infinite.
inline HLevelValue h_functional_level(const Ifs& ifs, int n, double s,
                                      Interval diam) {
  if (n < 0) throw invalid_input("h_functional_level: level must be >= 0");
  if (!(s >= 0.0)) throw invalid_input("h_functional_level: s must be >= 0");
  HLevelValue out;
  out.n = n;
  out.s = s;
  out.sum_ratio = moran_sum(ifs, s);
  const Interval diam_s = diam.pow(s);
  if (std::abs(out.sum_ratio - 1.0) <= kRootBand) {
    out.cls = HClass::finite;
    out.value = diam_s;
  } else if (out.sum_ratio < 1.0) {
    out.cls = HClass::zero;
    out.value = {0.0, 0.0};
  } else {
    out.cls = HClass::infinite;
    out.value = diam_s.scaled(std::pow(out.sum_ratio, n));
  }
  return out;
}

// Direct-enumeration counterpart over the finite window m = n .. n+window:
// per-level sums computed word by word, then the explicit infimum. Exists to
// cross-check the closed form, so it shares no arithmetic with it.
struct HDirectValue {
  Interval value;                     // diam^s * min of the window sums
  int argmin_level = 0;
  std::vector<double> level_sums_rel;  // relative sums, index 0 = level n
};

inline HDirectValue h_functional_level_direct(const Ifs& ifs, int n, double s,
                                              Interval diam, int window,
                                              std::uint64_t cap = kDefaultEnumCap) {
  if (n < 0) throw invalid_input("h_functional_level_direct: level must be >= 0");
  if (window < 0) throw invalid_input("h_functional_level_direct: window must be >= 0");
  if (!(s >= 0.0)) throw invalid_input("h_functional_level_direct: s must be >= 0");
  HDirectValue out;
  double best = std::numeric_limits<double>::infinity();
  for (int m = n; m <= n + window; ++m) {
    LogSumExpAccumulator acc;
    for_each_level_element(
        ifs, m, [&](const Word&, double log_diam) { acc.add(s * log_diam); },
        cap);
    const double sum = std::exp(acc.log_sum());
    out.level_sums_rel.push_back(sum);
    if (sum < best) {
      best = sum;
      out.argmin_level = m;
    }
  }
  out.value = diam.pow(s).scaled(best);
  return out;
}

// Greedy upper bound on H^s_{n,4} / H^s_{n,5} / H^s_{delta,6}: start from the
// level-n antichain and repeatedly split the heaviest leaf while that lowers
// the weight. A split multiplies the leaf's contribution by S(s), so the
// search is stationary exactly when S(s) >= 1 and otherwise drives the weight
// toward 0 as the budget grows.
struct AntichainBound {
  double rel_weight_initial = 0.0;  // S(s)^n, the level-n antichain weight
  double rel_weight = 0.0;          // weight after the greedy run
  Interval value;                   // rel_weight * diam^s
  int splits = 0;
  bool stationary = false;  // true when no split could lower the weight
  std::size_t size = 0;     // leaf count of the final antichain
};

inline AntichainBound h_upper_bound_antichain(const Ifs& ifs, int n, double s,
                                              int budget, Interval diam) {
  if (n < 0) throw invalid_input("h_upper_bound_antichain: level must be >= 0");
  if (budget < 1) throw invalid_input("h_upper_bound_antichain: budget must be >= 1");
  if (!(s >= 0.0)) throw invalid_input("h_upper_bound_antichain: s must be >= 0");

  const double S = moran_sum(ifs, s);
  const auto& logs = ifs.log_ratios();

  // Heap of leaf log-contributions; the greedy only ever needs the heaviest
  // leaf, never the word behind it.
  std::vector<double> seed;
  for_each_level_element(ifs, n,
                         [&](const Word&, double ld) { seed.push_back(s * ld); });
  std::priority_queue<double> leaves(std::less<double>{}, std::move(seed));
  double weight = std::pow(S, n);

  AntichainBound out;
  out.rel_weight_initial = weight;
  out.size = leaves.size();
  while (out.splits < budget) {
    const double lt = leaves.top();
    const double t = std::exp(lt);
    const double next = weight + t * (S - 1.0);
    if (!(next < weight * (1.0 - kRootBand))) {
      out.stationary = true;
      break;
    }
    leaves.pop();
    for (double lc : logs) leaves.push(lt + s * lc);
    weight = next;
    ++out.splits;
  }
  out.rel_weight = weight;
  out.size = leaves.size();
  out.value = diam.pow(s).scaled(weight);
  return out;
}

}  // namespace fractaldim
