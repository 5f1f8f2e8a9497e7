#pragma once

#include <optional>
#include <vector>

#include "fractaldim/common.hpp"
#include "fractaldim/hmeasure.hpp"
#include "fractaldim/ifs.hpp"
#include "fractaldim/moran.hpp"

namespace fractaldim {

inline constexpr double kDims456GridStep = 0.01;
inline constexpr double kJumpProbeOffset = 0.05;

struct SequenceTerm {
  int n = 0;
  Interval value;
};

struct DimSequenceValue {
  double value = 0.0;
  std::vector<SequenceTerm> sequence;
};

// dim1: limit of log N_n / (n log 2) = log k / log 2. The sequence is
// constant, reported anyway for report symmetry.
inline DimSequenceValue dim1(const Ifs& ifs, int sequence_terms = 12) {
  DimSequenceValue out;
  out.value = std::log(static_cast<double>(ifs.k())) / std::log(2.0);
  for (int n = 1; n <= sequence_terms; ++n)
    out.sequence.push_back({n, {out.value, out.value}});
  return out;
}

// dim2: limit of log N_n / (-log delta(K, Gamma_n)) = log k / (-log c_max).
// Sequence terms carry the diam(K) interval; the diameter influence decays
// like 1/n and vanishes in the limit. Terms whose denominator is not yet
// positive (delta >= 1) are skipped.
inline DimSequenceValue dim2(const Ifs& ifs, Interval diam,
                             int sequence_terms = 12) {
  DimSequenceValue out;
  if (ifs.k() == 1) {
    out.value = 0.0;
    return out;
  }
  const double logk = std::log(static_cast<double>(ifs.k()));
  const double b = -std::log(ifs.c_max());
  out.value = logk / b;
  const auto term = [&](int n, double d) { return n * logk / (n * b - std::log(d)); };
  for (int n = 1; n <= sequence_terms; ++n) {
    if (!(n * b - std::log(diam.hi) > 0.0) || !(diam.lo > 0.0)) continue;
    // increasing in d, so the endpoints map to the endpoints
    out.sequence.push_back({n, {term(n, diam.lo), term(n, diam.hi)}});
  }
  return out;
}

struct Dim3Result {
  MoranSolution moran;
  std::optional<HClass> below_class;  // H-class at s - 0.05 (expected infinite)
  std::optional<HClass> above_class;  // H-class at s + 0.05 (expected zero)
  bool jump_verified = false;
};

// dim3 equals the Moran exponent with no OSC assumption. The H3 jump is
// verified on both sides of s when the probe stays in s >= 0.
inline Dim3Result dim3(const Ifs& ifs, double tol = kDefaultMoranTol) {
  Dim3Result out;
  out.moran = moran_exponent(ifs.ratios(), tol);
  const Interval unit{1.0, 1.0};
  bool ok = true;
  if (out.moran.s - kJumpProbeOffset >= 0.0) {
    out.below_class =
        h_functional_level(ifs, 1, out.moran.s - kJumpProbeOffset, unit).cls;
    ok = ok && *out.below_class == HClass::infinite;
  }
  out.above_class =
      h_functional_level(ifs, 1, out.moran.s + kJumpProbeOffset, unit).cls;
  ok = ok && *out.above_class == HClass::zero;
  out.jump_verified = ok;
  return out;
}

struct Dims456Result {
  double dim4_upper = 0.0;
  double dim5_upper = 0.0;
  double dim6_upper = 0.0;
  double grid_step = kDims456GridStep;
  int level_n = 0;
  int budget = 0;
  int evaluations = 0;
};

// Upper bounds for dims IV, V, VI: scan the s-grid and return the first
// abscissa where the greedy antichain bound stops being stationary and starts
// decreasing toward 0. All three families share the antichain witness; for
// dim VI the level-to-delta translation delta = c_max^n diam(K) maps the same
// witness into the delta-indexed family, so the abscissa coincides.
inline Dims456Result dims456_upper(const Ifs& ifs, int n, int budget,
                                   double grid_step = kDims456GridStep) {
  if (budget < 1) throw invalid_input("dims456_upper: budget must be >= 1");
  if (!(grid_step > 0.0)) throw invalid_input("dims456_upper: grid step must be > 0");
  Dims456Result out;
  out.grid_step = grid_step;
  out.level_n = n;
  out.budget = budget;
  if (ifs.k() == 1) return out;  // singleton attractor, all dims 0

  const Interval unit{1.0, 1.0};
  const double s_max =
      -std::log(static_cast<double>(ifs.k())) / std::log(ifs.c_max());
  const int j_max = static_cast<int>(std::ceil(s_max / grid_step)) + 2;
  double crossing = s_max + grid_step;
  for (int j = 0; j <= j_max; ++j) {
    const double s = j * grid_step;
    const AntichainBound b = h_upper_bound_antichain(ifs, n, s, budget, unit);
    ++out.evaluations;
    if (!b.stationary) {
      crossing = s;
      break;
    }
  }
  out.dim4_upper = crossing;
  out.dim5_upper = crossing;
  out.dim6_upper = crossing;
  return out;
}

}  // namespace fractaldim
