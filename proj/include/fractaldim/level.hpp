#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fractaldim/common.hpp"
#include "fractaldim/generate.hpp"
#include "fractaldim/ifs.hpp"

namespace fractaldim {

// One element f_w(K) of a level, addressed by its word. Diameters are kept
// relative to diam(K) and in log-space, so diam(K) itself never enters until
// a caller multiplies the final interval.
struct LevelElement {
  Word word;
  double log_diam_rel = 0.0;  // log prod_j c_{w_j}

  double relative_diameter() const { return std::exp(log_diam_rel); }
};

// The multiset level Gamma_n. Multiplicity is preserved: geometric
// coincidence of pieces never changes counts.
struct Level {
  int index = 0;
  std::vector<LevelElement> elements;
};

// Visits all k^n level elements in lexicographic word order without
// materializing them. Cheap enough for streaming million-element levels.
inline void for_each_level_element(
    const Ifs& ifs, int n,
    const std::function<void(const Word&, double)>& visit,
    std::uint64_t cap = kDefaultEnumCap) {
  if (n < 0) throw invalid_input("level: index must be >= 0");
  detail::require_enum_budget(ifs.k(), n, cap, "level enumeration");
  Word w;
  w.letters.assign(static_cast<std::size_t>(n), 1);
  std::vector<double> prefix_log(static_cast<std::size_t>(n) + 1, 0.0);
  const auto& logs = ifs.log_ratios();
  if (n == 0) {
    visit(w, 0.0);
    return;
  }
  for (int i = 0; i < n; ++i)
    prefix_log[i + 1] = prefix_log[i] + logs[0];
  while (true) {
    visit(w, prefix_log[static_cast<std::size_t>(n)]);
    int pos = n - 1;
    while (pos >= 0 && w.letters[pos] == ifs.k()) --pos;
    if (pos < 0) break;
    ++w.letters[pos];
    prefix_log[pos + 1] = prefix_log[pos] + logs[w.letters[pos] - 1];
    for (int i = pos + 1; i < n; ++i) {
      w.letters[i] = 1;
      prefix_log[i + 1] = prefix_log[i] + logs[0];
    }
  }
}

inline Level level(const Ifs& ifs, int n, std::uint64_t cap = kDefaultEnumCap) {
  Level out;
  out.index = n;
  const auto total = checked_pow(ifs.k(), n);
  if (total && *total <= cap) out.elements.reserve(*total);
  for_each_level_element(
      ifs, n,
      [&](const Word& w, double log_diam) {
        out.elements.push_back(LevelElement{w, log_diam});
      },
      cap);
  return out;
}

// N_n(K) = k^n with multiset semantics: every piece f_w(K) lies inside K, so
// every level element intersects it.
struct LevelCount {
  std::optional<std::uint64_t> count;  // absent when k^n overflows
  double log_count = 0.0;              // log k^n, always valid
};

inline LevelCount count_intersecting(const Ifs& ifs, int n) {
  if (n < 0) throw invalid_input("count_intersecting: level index must be >= 0");
  LevelCount out;
  out.count = checked_pow(ifs.k(), n);
  out.log_count = n * std::log(static_cast<double>(ifs.k()));
  return out;
}

// delta(K, Gamma_n) = c_max^n * diam(K), reported as an interval because
// diam(K) is only known as one.
inline Interval level_sup_diameter(const Ifs& ifs, int n, Interval diam) {
  if (n < 0) throw invalid_input("level_sup_diameter: level index must be >= 0");
  return diam.scaled(std::pow(ifs.c_max(), n));
}

}  // namespace fractaldim
