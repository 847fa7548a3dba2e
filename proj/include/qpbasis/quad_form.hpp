#pragma once

#include "qpbasis/common.hpp"

#include <optional>
#include <vector>

namespace qpbasis {

// Dense symmetric rational matrix helpers for the minimal-energy quadratic
// form guard. Dimensions here are tiny (one slice of dual-charge
// coordinates, at most sum of nu_i <= 2l), so exact arithmetic is cheap.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, Rational(0)) {}

  int dim() const { return n_; }
  Rational& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const Rational& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  // Exact LDL^T factorization; positive definite iff every pivot is > 0.
  bool positive_definite() const {
    RationalMatrix w = *this;
    for (int k = 0; k < n_; ++k) {
      if (w.at(k, k) <= 0) return false;
      for (int i = k + 1; i < n_; ++i) {
        const Rational f = w.at(i, k) / w.at(k, k);
        for (int j = k; j < n_; ++j) w.at(i, j) -= f * w.at(k, j);
      }
    }
    return true;
  }

  // Gauss-Jordan inverse; std::nullopt when singular.
  std::optional<RationalMatrix> inverse() const {
    RationalMatrix w = *this, inv(n_);
    for (int i = 0; i < n_; ++i) inv.at(i, i) = 1;
    for (int col = 0; col < n_; ++col) {
      int pivot = -1;
      for (int r = col; r < n_; ++r)
        if (w.at(r, col) != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) return std::nullopt;
      if (pivot != col)
        for (int j = 0; j < n_; ++j) {
          std::swap(w.at(pivot, j), w.at(col, j));
          std::swap(inv.at(pivot, j), inv.at(col, j));
        }
      const Rational d = w.at(col, col);
      for (int j = 0; j < n_; ++j) {
        w.at(col, j) /= d;
        inv.at(col, j) /= d;
      }
      for (int r = 0; r < n_; ++r) {
        if (r == col || w.at(r, col) == 0) continue;
        const Rational f = w.at(r, col);
        for (int j = 0; j < n_; ++j) {
          w.at(r, j) -= f * w.at(col, j);
          inv.at(r, j) -= f * inv.at(col, j);
        }
      }
    }
    return inv;
  }

  // Schur complement onto the leading d coordinates: the matrix of
  // v -> min over completions w of Q(v ++ w), for positive definite Q.
  RationalMatrix schur_leading(int d) const {
    const int f = n_ - d;
    if (f == 0) return *this;
    RationalMatrix aff(f);
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < f; ++j) aff.at(i, j) = at(d + i, d + j);
    auto inv = aff.inverse();
    detail::check(inv.has_value(), "Schur complement: trailing block is singular");
    RationalMatrix out(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Rational s = at(i, j);
        for (int u = 0; u < f; ++u)
          for (int v = 0; v < f; ++v) s -= at(i, d + u) * inv->at(u, v) * at(d + v, j);
        out.at(i, j) = s;
      }
    return out;
  }

 private:
  int n_ = 0;
  std::vector<Rational> a_;
};

// Largest integer r >= 0 with r^2 * den <= num (num, den > 0).
inline long long floor_sqrt_ratio(const BigInt& num, const BigInt& den) {
  if (num < 0) return -1;
  const BigInt quot = num / den;
  BigInt r = boost::multiprecision::sqrt(quot);
  while ((r + 1) * (r + 1) * den <= num) ++r;
  while (r > 0 && r * r * den > num) --r;
  return r.convert_to<long long>();
}

}  // namespace qpbasis
