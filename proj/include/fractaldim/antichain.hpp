#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "fractaldim/common.hpp"
#include "fractaldim/generate.hpp"
#include "fractaldim/ifs.hpp"

namespace fractaldim {

namespace detail {

// Decides completeness over a lexicographically sorted word range. A range is
// complete below `depth` when it is exactly one word of that length, or when
// every letter 1..k heads a sub-range that is itself complete.
inline bool complete_range(const std::vector<Word>& words, std::size_t lo,
                           std::size_t hi, std::size_t depth, std::uint32_t k) {
  if (hi - lo == 1 && words[lo].size() == depth) return true;
  std::size_t at = lo;
  for (std::uint32_t letter = 1; letter <= k; ++letter) {
    std::size_t end = at;
    while (end < hi && words[end].size() > depth &&
           words[end].letters[depth] == letter)
      ++end;
    if (end == at) return false;
    if (!complete_range(words, at, end, depth + 1, k)) return false;
    at = end;
  }
  return at == hi;
}

}  // namespace detail

// A prefix-free set of words. Prefix-freeness is an invariant; completeness
// (every infinite index sequence has exactly one prefix in the set) is
// decided at construction and exposed as a flag.
class Antichain {
 public:
  Antichain(std::uint32_t k, std::vector<Word> words) : k_(k), words_(std::move(words)) {
    if (k_ < 1) throw invalid_input("antichain: alphabet size must be >= 1");
    if (words_.empty()) throw invalid_input("antichain: empty word set");
    for (const Word& w : words_)
      for (std::uint32_t letter : w.letters)
        if (letter < 1 || letter > k_)
          throw invalid_input("antichain: word letter " + std::to_string(letter) +
                              " outside alphabet 1.." + std::to_string(k_));
    std::sort(words_.begin(), words_.end());
    for (std::size_t i = 0; i + 1 < words_.size(); ++i) {
      const Word& a = words_[i];
      const Word& b = words_[i + 1];
      if (a.size() <= b.size() &&
          std::equal(a.letters.begin(), a.letters.end(), b.letters.begin()))
        throw invalid_input("antichain: word " + word_to_string(a, k_) +
                            " is a prefix of " + word_to_string(b, k_));
    }
    complete_ = detail::complete_range(words_, 0, words_.size(), 0, k_);
  }

  std::uint32_t k() const { return k_; }
  const std::vector<Word>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }
  bool complete() const { return complete_; }

 private:
  std::uint32_t k_;
  std::vector<Word> words_;
  bool complete_ = false;
};

// The uniform-depth antichain I^n.
inline Antichain level_antichain(const Ifs& ifs, int n,
                                 std::uint64_t cap = kDefaultEnumCap) {
  if (n < 0) throw invalid_input("level_antichain: depth must be >= 0");
  detail::require_enum_budget(ifs.k(), n, cap, "antichain enumeration");
  std::vector<Word> words;
  if (n == 0) {
    words.push_back(Word{});
  } else {
    Word w;
    w.letters.assign(static_cast<std::size_t>(n), 1);
    while (true) {
      words.push_back(w);
      int pos = n - 1;
      while (pos >= 0 && w.letters[pos] == ifs.k()) --pos;
      if (pos < 0) break;
      ++w.letters[pos];
      for (int i = pos + 1; i < n; ++i) w.letters[i] = 1;
    }
  }
  return Antichain(ifs.k(), std::move(words));
}

// Sum over the antichain of (prod_j c_{w_j})^s, evaluated in log-sum-exp
// form. At the Moran exponent this is exactly 1 for every complete antichain
// (Kraft identity).
inline double antichain_weight(const Ifs& ifs, const Antichain& a, double s) {
  if (a.k() != ifs.k())
    throw invalid_input("antichain_weight: alphabet size does not match the IFS");
  if (!a.complete())
    throw invalid_input("antichain_weight: antichain is not complete");
  if (!(s >= 0.0)) throw invalid_input("antichain_weight: s must be >= 0");
  std::vector<double> log_terms;
  log_terms.reserve(a.size());
  for (const Word& w : a.words()) log_terms.push_back(s * word_log_diam(ifs, w));
  return std::exp(log_sum_exp(log_terms));
}

}  // namespace fractaldim
