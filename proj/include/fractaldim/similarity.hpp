#pragma once

#include <cmath>
#include <utility>

#include "fractaldim/common.hpp"
#include "fractaldim/linalg.hpp"

namespace fractaldim {

// A contracting similarity x |-> c * Q * x + t, stored in factored form so
// the ratio c stays exact through composition (dimension formulas depend on
// ratios only). The orthogonal part is validated at construction and never
// silently re-normalized.
class Similarity {
 public:
  Similarity(double ratio, Mat ortho, Vec shift, double ratio_guard = kRatioGuard)
      : ratio_(ratio), ortho_(std::move(ortho)), shift_(std::move(shift)) {
    const int d = static_cast<int>(shift_.size());
    if (d < 1) throw invalid_input("similarity: ambient dimension must be >= 1");
    if (ortho_.n != d)
      throw invalid_input("similarity: orthogonal part must be " +
                          std::to_string(d) + "x" + std::to_string(d));
    if (!(ratio_ > 0.0) || !(ratio_ < 1.0 - ratio_guard))
      throw invalid_input("similarity: ratio must lie in (0, 1 - guard), got " +
                          std::to_string(ratio_));
    if (!is_orthogonal(ortho_))
      throw invalid_input("similarity: matrix is not orthogonal within tolerance");
  }

  // The identity map; only legal as the composition of the empty word.
  // Exempt from the ratio-in-(0,1) invariant.
  static Similarity identity(int dim) {
    return Similarity(Mat::identity(dim), Vec(static_cast<std::size_t>(dim), 0.0));
  }

  int dim() const { return static_cast<int>(shift_.size()); }
  double ratio() const { return ratio_; }
  const Mat& ortho() const { return ortho_; }
  const Vec& shift() const { return shift_; }
  bool is_identity() const { return ratio_ == 1.0; }

  Vec operator()(const Vec& x) const {
    if (x.size() != shift_.size())
      throw invalid_input("similarity: point dimension mismatch");
    Vec y = mul(ortho_, x);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = ratio_ * y[i] + shift_[i];
    return y;
  }

 private:
  // Identity bypass: Q = I, t = 0, ratio = 1.
  Similarity(Mat q, Vec t) : ratio_(1.0), ortho_(std::move(q)), shift_(std::move(t)) {}

  double ratio_;
  Mat ortho_;
  Vec shift_;
};

inline Vec apply(const Similarity& f, const Vec& x) { return f(x); }

// f o g (g is applied first). Ratio multiplies exactly; the affine parts
// compose as t = f(t_g), Q = Q_f * Q_g.
inline Similarity compose(const Similarity& f, const Similarity& g) {
  if (f.dim() != g.dim()) throw invalid_input("compose: dimension mismatch");
  if (f.is_identity()) return g;
  if (g.is_identity()) return f;
  return Similarity(f.ratio() * g.ratio(), f.ortho() * g.ortho(), f(g.shift()));
}

// The unique x with f(x) = x, from (I - c Q) x = t. Requires ratio < 1,
// which makes the system nonsingular.
inline Vec fixed_point(const Similarity& f) {
  if (!(f.ratio() < 1.0)) throw invalid_input("fixed_point: ratio must be < 1");
  const int d = f.dim();
  Mat a = Mat::identity(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) -= f.ratio() * f.ortho()(i, j);
  return solve(std::move(a), f.shift());
}

}  // namespace fractaldim
