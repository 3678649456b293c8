/* Dense exact linear algebra.

   Rank over Q goes through Bareiss fraction-free elimination on a
   denominator-cleared integer copy; rank over F_p uses ordinary Gaussian
   elimination on residues.  Pivots are chosen deterministically (first
   nonzero row in the leftmost eligible column), so every run of the same
   input produces the same trace. */

#pragma once

#include <vector>

#include "buildings/numeric.hpp"

namespace buildings {

template <class T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t r, std::size_t c, T fill = T())
      : rows_(r), cols_(c), data_(r * c, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

 private:
  std::size_t rows_, cols_;
  std::vector<T> data_;
};

using FMat = Mat<FieldScalar>;
using ZMat = Mat<BigInt>;

inline FMat fmat_identity(std::size_t n, long long characteristic) {
  FMat m(n, n, FieldScalar::zero(characteristic));
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = FieldScalar::one(characteristic);
  return m;
}

inline FMat fmat_mul(const FMat& a, const FMat& b) {
  if (a.cols() != b.rows()) throw InputError("matrix product shape mismatch");
  if (a.rows() == 0 || b.cols() == 0) return FMat(a.rows(), b.cols());
  FMat r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      FieldScalar acc = a.at(i, 0) * b.at(0, j);
      for (std::size_t k = 1; k < a.cols(); ++k) acc += a.at(i, k) * b.at(k, j);
      r.at(i, j) = acc;
    }
  return r;
}

/* Rank of an integer matrix by Bareiss fraction-free elimination. */
inline std::size_t rank_bareiss(ZMat a) {
  std::size_t rank = 0;
  BigInt prev = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a.at(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < a.cols(); ++j)
        std::swap(a.at(row, j), a.at(piv, j));
    for (std::size_t i = row + 1; i < a.rows(); ++i) {
      for (std::size_t j = col + 1; j < a.cols(); ++j)
        a.at(i, j) = (a.at(i, j) * a.at(row, col) - a.at(i, col) * a.at(row, j)) / prev;
      a.at(i, col) = 0;
    }
    prev = a.at(row, col);
    ++row;
    ++rank;
  }
  return rank;
}

/* Determinant of a square integer matrix, Bareiss fraction-free. */
inline BigInt det_bareiss(ZMat a) {
  if (a.rows() != a.cols()) throw InputError("determinant of non-square matrix");
  std::size_t n = a.rows();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a.at(piv, k) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
      a.at(i, k) = 0;
    }
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

/* Clears denominators row by row; the rank is unchanged. */
inline ZMat clear_denominators(const FMat& a) {
  ZMat z(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    BigInt l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const BigInt& d = a.at(i, j).value().den();
      l = l / boost::multiprecision::gcd(l, d) * d;
    }
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Rational& v = a.at(i, j).value();
      z.at(i, j) = v.num() * (l / v.den());
    }
  }
  return z;
}

/* Row-reduction over the field (works in any characteristic).  Returns the
   rank; if pivot_cols is non-null, the pivot column indices are appended. */
inline std::size_t rref(FMat& a, long long characteristic,
                        std::vector<std::size_t>* pivot_cols = nullptr) {
  (void)characteristic;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a.at(piv, col).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < a.cols(); ++j)
        std::swap(a.at(row, j), a.at(piv, j));
    FieldScalar inv = a.at(row, col).inverse();
    for (std::size_t j = col; j < a.cols(); ++j) a.at(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a.at(i, col).is_zero()) continue;
      FieldScalar f = a.at(i, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        a.at(i, j) -= f * a.at(row, j);
    }
    if (pivot_cols) pivot_cols->push_back(col);
    ++row;
  }
  return row;
}

/* Rank dispatch: Bareiss over Q, Gaussian elimination over F_p. */
inline std::size_t rank(const FMat& a, long long characteristic) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  if (characteristic == 0) return rank_bareiss(clear_denominators(a));
  FMat c = a;
  return rref(c, characteristic);
}

/* Basis of the right kernel {x : a x = 0}; columns of the result. */
inline FMat kernel_basis(const FMat& a, long long characteristic) {
  std::vector<std::size_t> pivots;
  FMat r = a;
  std::size_t rk = rref(r, characteristic, &pivots);
  std::vector<std::size_t> free_cols;
  {
    std::size_t p = 0;
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (p < pivots.size() && pivots[p] == c) { ++p; continue; }
      free_cols.push_back(c);
    }
  }
  FMat k(a.cols(), free_cols.size(), FieldScalar::zero(characteristic));
  for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
    std::size_t fc = free_cols[fi];
    k.at(fc, fi) = FieldScalar::one(characteristic);
    for (std::size_t p = 0; p < rk; ++p)
      k.at(pivots[p], fi) = -r.at(p, fc);
  }
  return k;
}

/* Solve B X = T for X where the columns of B are independent; throws if any
   target column lies outside the column span. */
inline FMat solve_in_basis(const FMat& b, const FMat& t, long long characteristic) {
  if (b.rows() != t.rows()) throw InputError("solve_in_basis shape mismatch");
  FMat aug(b.rows(), b.cols() + t.cols(), FieldScalar::zero(characteristic));
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) aug.at(i, j) = b.at(i, j);
    for (std::size_t j = 0; j < t.cols(); ++j) aug.at(i, b.cols() + j) = t.at(i, j);
  }
  std::vector<std::size_t> pivots;
  std::size_t rk = rref(aug, characteristic, &pivots);
  for (std::size_t p = 0; p < pivots.size(); ++p)
    if (pivots[p] >= b.cols())
      throw Error("solve_in_basis: target not in column span");
  FMat x(b.cols(), t.cols(), FieldScalar::zero(characteristic));
  for (std::size_t p = 0; p < rk; ++p)
    for (std::size_t j = 0; j < t.cols(); ++j)
      x.at(pivots[p], j) = aug.at(p, b.cols() + j);
  return x;
}

}  // namespace buildings
