#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cbasis/error.hpp"

namespace cbasis {

/// Dense row-major integer matrix. Entries of exchange matrices, quasi-Cartan
/// matrices and root coordinates all live comfortably in `int`; determinants
/// are carried in 64 bits with 128-bit intermediates.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, int fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  IntMatrix(std::initializer_list<std::initializer_list<int>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw ParseError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  int operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const int> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  const std::vector<int>& data() const { return data_; }

  IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix operator-() const {
    IntMatrix m = *this;
    for (int& v : m.data_) v = -v;
    return m;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw InvalidArgument("matrix product: shape mismatch");
    IntMatrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const int aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  bool is_skew_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
      if ((*this)(i, i) != 0) return false;
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != -(*this)(j, i)) return false;
    }
    return true;
  }

  /// Square submatrix on the leading `k` rows and columns.
  IntMatrix leading(std::size_t k) const {
    IntMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

  /// Drops row `r` and column `c`.
  IntMatrix minor_matrix(std::size_t r, std::size_t c) const {
    IntMatrix m(rows_ - 1, cols_ - 1);
    for (std::size_t i = 0, mi = 0; i < rows_; ++i) {
      if (i == r) continue;
      for (std::size_t j = 0, mj = 0; j < cols_; ++j) {
        if (j == c) continue;
        m(mi, mj++) = (*this)(i, j);
      }
      ++mi;
    }
    return m;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? "," : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<int> data_;
};

namespace detail {

inline std::int64_t narrow_checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN)
    throw OverflowError("integer determinant exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

// One fraction-free elimination step: (a*d - b*c) / prev, exact by Sylvester's identity.
inline std::int64_t bareiss_step(std::int64_t a, std::int64_t d, std::int64_t b,
                                 std::int64_t c, std::int64_t prev) {
  const __int128 num = static_cast<__int128>(a) * d - static_cast<__int128>(b) * c;
  return narrow_checked(num / prev);
}

inline std::vector<std::int64_t> widen(const IntMatrix& m) {
  return {m.data().begin(), m.data().end()};
}

}  // namespace detail

/// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
/// Throws OverflowError instead of returning a wrapped value.
inline std::int64_t determinant(const IntMatrix& m) {
  if (!m.is_square()) throw InvalidArgument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  auto a = detail::widen(m);
  auto at = [&](std::size_t i, std::size_t j) -> std::int64_t& { return a[i * n + j]; };

  std::int64_t sign = 1;
  std::int64_t prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        at(i, j) = detail::bareiss_step(at(i, j), at(k, k), at(i, k), at(k, j), prev);
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

/// Leading principal minors D_1..D_n. Without pivoting the Bareiss pivots are
/// exactly these minors; once a pivot vanishes the rest are computed directly.
inline std::vector<std::int64_t> leading_principal_minors(const IntMatrix& m) {
  if (!m.is_square()) throw InvalidArgument("minors of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<std::int64_t> minors;
  minors.reserve(n);
  auto a = detail::widen(m);
  auto at = [&](std::size_t i, std::size_t j) -> std::int64_t& { return a[i * n + j]; };

  std::int64_t prev = 1;
  std::size_t k = 0;
  for (; k < n; ++k) {
    minors.push_back(at(k, k));
    if (at(k, k) == 0) break;
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        at(i, j) = detail::bareiss_step(at(i, j), at(k, k), at(i, k), at(k, j), prev);
    prev = at(k, k);
  }
  for (std::size_t r = k + 1; r < n; ++r) minors.push_back(determinant(m.leading(r + 1)));
  return minors;
}

/// Integer inverse of a unimodular matrix (det = ±1) via the adjugate.
inline IntMatrix unimodular_inverse(const IntMatrix& m) {
  const std::int64_t det = determinant(m);
  if (det != 1 && det != -1)
    throw ConstructionError("matrix is not unimodular (det = " + std::to_string(det) + ")");
  const std::size_t n = m.rows();
  IntMatrix inv(n, n);
  if (n == 1) {
    inv(0, 0) = static_cast<int>(det);
    return inv;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t cof = determinant(m.minor_matrix(j, i)) * (((i + j) % 2) ? -1 : 1);
      inv(i, j) = static_cast<int>(cof * det);
    }
  return inv;
}

inline std::vector<int> multiply(const IntMatrix& m, std::span<const int> v) {
  if (m.cols() != v.size()) throw InvalidArgument("matrix-vector product: shape mismatch");
  std::vector<int> out(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

}  // namespace cbasis
