#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nat/errors.hpp"

namespace nat {

using BigInt = boost::multiprecision::cpp_int;

/// Dense integer matrix with arbitrary-precision entries.
class IntegerMatrix {
public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  IntegerMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_)
        throw InputError("ragged integer matrix");
      for (auto v : r)
        a_.emplace_back(v);
    }
  }

  static IntegerMatrix identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  BigInt& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  friend IntegerMatrix operator*(const IntegerMatrix& x, const IntegerMatrix& y) {
    if (x.cols_ != y.rows_)
      throw InputError("matrix dimension mismatch");
    IntegerMatrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        if (x(i, k) == 0)
          continue;
        for (std::size_t j = 0; j < y.cols_; ++j)
          r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < cols_; ++c)
      std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < rows_; ++r)
      std::swap((*this)(r, i), (*this)(r, j));
  }
  /// row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const BigInt& k) {
    for (std::size_t c = 0; c < cols_; ++c)
      (*this)(dst, c) += k * (*this)(src, c);
  }
  /// col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, const BigInt& k) {
    for (std::size_t r = 0; r < rows_; ++r)
      (*this)(r, dst) += k * (*this)(r, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c)
      (*this)(i, c) = -(*this)(i, c);
  }

  friend std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j)
        os << (j ? ", " : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> a_;
};

inline BigInt determinant(IntegerMatrix m) {
  // Bareiss fraction-free elimination.
  const std::size_t n = m.rows();
  if (n != m.cols())
    throw InputError("determinant of a non-square matrix");
  if (n == 0)
    return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0)
        ++r;
      if (r == n)
        return 0;
      m.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

struct SmithForm {
  /// min(rows, cols) entries d1 | d2 | ... , all >= 0; zeros trail.
  std::vector<BigInt> diagonal;
  IntegerMatrix left;  ///< rows x rows, unimodular
  IntegerMatrix right; ///< cols x cols, unimodular
};

/// Smith normal form with left * m * right = diag(diagonal).
///
/// Pivot: smallest nonzero absolute value in the active block, ties to the
/// lowest (row, col).
inline SmithForm smith_normal_form(IntegerMatrix m) {
  const std::size_t R = m.rows(), C = m.cols();
  IntegerMatrix left = IntegerMatrix::identity(R);
  IntegerMatrix right = IntegerMatrix::identity(C);
  const std::size_t r = std::min(R, C);

  for (std::size_t t = 0; t < r; ++t) {
    while (true) {
      // Pivot search over the active block.
      bool found = false;
      std::size_t pi = t, pj = t;
      BigInt best;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j) {
          if (m(i, j) == 0)
            continue;
          BigInt v = abs(m(i, j));
          if (!found || v < best) {
            found = true;
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (!found)
        break;
      if (pi != t) {
        m.swap_rows(pi, t);
        left.swap_rows(pi, t);
      }
      if (pj != t) {
        m.swap_cols(pj, t);
        right.swap_cols(pj, t);
      }

      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (m(i, t) == 0)
          continue;
        BigInt q = m(i, t) / m(t, t);
        m.add_row(i, t, -q);
        left.add_row(i, t, -q);
        if (m(i, t) != 0)
          clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (m(t, j) == 0)
          continue;
        BigInt q = m(t, j) / m(t, t);
        m.add_col(j, t, -q);
        right.add_col(j, t, -q);
        if (m(t, j) != 0)
          clean = false;
      }
      if (!clean)
        continue;

      // Row and column cleared; enforce divisibility into the rest.
      bool divides = true;
      for (std::size_t i = t + 1; i < R && divides; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (m(i, j) % m(t, t) != 0) {
            m.add_row(t, i, 1);
            left.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides)
        break;
    }
    if (m(t, t) < 0) {
      m.negate_row(t);
      left.negate_row(t);
    }
  }

  SmithForm out;
  out.diagonal.reserve(r);
  for (std::size_t t = 0; t < r; ++t)
    out.diagonal.push_back(m(t, t));
  out.left = std::move(left);
  out.right = std::move(right);
  return out;
}

} // namespace nat
