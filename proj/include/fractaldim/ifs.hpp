#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fractaldim/common.hpp"
#include "fractaldim/similarity.hpp"

namespace fractaldim {

// A finite word over the index set I = {1, ..., k}. Letters are 1-based to
// match the addressing f_w = f_{w1} o ... o f_{wn}; the empty word is legal
// and addresses the identity.
struct Word {
  std::vector<std::uint32_t> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }

  bool operator==(const Word&) const = default;

  // Lexicographic; a proper prefix sorts before its extensions.
  bool operator<(const Word& o) const { return letters < o.letters; }
};

// Rendering: concatenated digits while the alphabet allows it ("213"),
// dot-separated otherwise ("2.13.1").
inline std::string word_to_string(const Word& w, std::uint32_t k) {
  std::string s;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (k > 9 && i > 0) s += '.';
    s += std::to_string(w.letters[i]);
  }
  return s;
}

// An ordered finite family of same-dimension similarities. Order is
// significant: the index i in I = {1..k} is the word alphabet. k = 1 is
// accepted everywhere; the attractor is then a singleton and all dimensions
// are 0 by convention.
class Ifs {
 public:
  explicit Ifs(std::vector<Similarity> maps) : maps_(std::move(maps)) {
    if (maps_.empty()) throw invalid_input("ifs: needs at least one similarity");
    for (const auto& m : maps_) {
      if (m.dim() != maps_[0].dim())
        throw invalid_input("ifs: all similarities must share the ambient dimension");
      if (m.is_identity())
        throw invalid_input("ifs: identity map is not a contraction");
    }
  }

  std::uint32_t k() const { return static_cast<std::uint32_t>(maps_.size()); }
  int dim() const { return maps_[0].dim(); }
  const std::vector<Similarity>& maps() const { return maps_; }

  // 1-based, matching word letters.
  const Similarity& map(std::uint32_t letter) const { return maps_[letter - 1]; }

  double ratio(std::uint32_t letter) const { return maps_[letter - 1].ratio(); }

  std::vector<double> ratios() const {
    std::vector<double> r;
    r.reserve(maps_.size());
    for (const auto& m : maps_) r.push_back(m.ratio());
    return r;
  }

  std::vector<double> log_ratios() const {
    std::vector<double> r;
    r.reserve(maps_.size());
    for (const auto& m : maps_) r.push_back(std::log(m.ratio()));
    return r;
  }

  double c_max() const {
    double c = 0.0;
    for (const auto& m : maps_) c = std::max(c, m.ratio());
    return c;
  }

  bool equal_ratios() const {
    for (const auto& m : maps_)
      if (m.ratio() != maps_[0].ratio()) return false;
    return true;
  }

 private:
  std::vector<Similarity> maps_;
};

inline void validate_word(const Ifs& ifs, const Word& w) {
  for (std::uint32_t l : w.letters)
    if (l < 1 || l > ifs.k())
      throw invalid_input("word: letter " + std::to_string(l) +
                          " outside alphabet 1.." + std::to_string(ifs.k()));
}

// f_w = f_{w1} o ... o f_{wn}. The ratio is the product of the letters'
// ratios; beyond 50 letters it is accumulated in log space.
inline Similarity compose(const Ifs& ifs, const Word& w) {
  validate_word(ifs, w);
  if (w.empty()) return Similarity::identity(ifs.dim());
  const int d = ifs.dim();
  Mat q = Mat::identity(d);
  Vec t(static_cast<std::size_t>(d), 0.0);
  double ratio = 1.0;
  double log_ratio = 0.0;
  for (std::uint32_t l : w.letters) {
    const Similarity& f = ifs.map(l);
    // current composite g applied to f's shift: t <- ratio * Q * t_f + t
    Vec qt = mul(q, f.shift());
    for (int i = 0; i < d; ++i) t[i] += ratio * qt[i];
    q = q * f.ortho();
    ratio *= f.ratio();
    log_ratio += std::log(f.ratio());
  }
  const double r = (w.size() <= 50) ? ratio : std::exp(log_ratio);
  if (!(r > 0.0))
    throw invalid_input("compose: ratio underflows for a word of length " +
                        std::to_string(w.size()));
  return Similarity(r, std::move(q), std::move(t));
}

// log of the relative diameter of the cylinder f_w(K): sum of log ratios.
inline double word_log_diam(const Ifs& ifs, const Word& w) {
  validate_word(ifs, w);
  double s = 0.0;
  for (std::uint32_t l : w.letters) s += std::log(ifs.ratio(l));
  return s;
}

}  // namespace fractaldim
