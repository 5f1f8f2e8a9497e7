#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "fractaldim/common.hpp"

namespace fractaldim {

using Vec = std::vector<double>;

// Dense square matrix, row-major. Ambient dimensions are tiny (d = 1..3
// typically), so no BLAS — a hand-rolled solve keeps the library
// dependency-free.
struct Mat {
  int n = 0;
  std::vector<double> a;

  Mat() = default;
  explicit Mat(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0.0) {}

  static Mat identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

inline Mat operator*(const Mat& x, const Mat& y) {
  Mat r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      const double xik = x(i, k);
      if (xik == 0.0) continue;
      for (int j = 0; j < x.n; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

inline Vec mul(const Mat& m, const Vec& v) {
  Vec r(v.size(), 0.0);
  for (int i = 0; i < m.n; ++i) {
    double s = 0.0;
    for (int j = 0; j < m.n; ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

inline double dot(const Vec& x, const Vec& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline double norm(const Vec& x) { return std::sqrt(dot(x, x)); }

inline double distance(const Vec& x, const Vec& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline bool is_orthogonal(const Mat& q, double tol = kOrthoTol) {
  for (int i = 0; i < q.n; ++i)
    for (int j = 0; j < q.n; ++j) {
      double s = 0.0;
      for (int k = 0; k < q.n; ++k) s += q(k, i) * q(k, j);
      const double want = (i == j) ? 1.0 : 0.0;
      if (std::abs(s - want) > tol) return false;
    }
  return true;
}

// Solves A x = b by Gaussian elimination with partial pivoting.
inline Vec solve(Mat A, Vec b) {
  const int n = A.n;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A(r, col)) > std::abs(A(piv, col))) piv = r;
    if (A(piv, col) == 0.0) throw invalid_input("singular linear system");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(A(piv, j), A(col, j));
      std::swap(b[piv], b[col]);
    }
    for (int r = col + 1; r < n; ++r) {
      const double f = A(r, col) / A(col, col);
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) A(r, j) -= f * A(col, j);
      b[r] -= f * b[col];
    }
  }
  Vec x(static_cast<std::size_t>(n), 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
    x[i] = s / A(i, i);
  }
  return x;
}

inline Mat rotation2d(double degrees) {
  const double rad = degrees * (std::acos(-1.0) / 180.0);
  Mat q(2);
  q(0, 0) = std::cos(rad);
  q(0, 1) = -std::sin(rad);
  q(1, 0) = std::sin(rad);
  q(1, 1) = std::cos(rad);
  return q;
}

}  // namespace fractaldim
