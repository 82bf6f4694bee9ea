#pragma once

#include <gln/rational.hpp>

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gln {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, T(0)) {}
  explicit Matrix(std::size_t n) : Matrix(n, n) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    a_.reserve(r_ * c_);
    for (const auto& row : rows) {
      if (row.size() != c_) throw std::invalid_argument("ragged matrix literal");
      for (const auto& x : row) a_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix diagonal(const std::vector<T>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  std::size_t n() const { return r_; }
  bool square() const { return r_ == c_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
  }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.c_ != y.r_) throw std::invalid_argument("dimension mismatch in product");
    Matrix z(x.r_, y.c_);
    for (std::size_t i = 0; i < x.r_; ++i)
      for (std::size_t k = 0; k < x.c_; ++k) {
        const T& xik = x(i, k);
        if (xik == 0) continue;
        for (std::size_t j = 0; j < y.c_; ++j) z(i, j) += xik * y(k, j);
      }
    return z;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
  }

  const std::vector<T>& data() const { return a_; }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using RationalMatrix = Matrix<Q>;
using IntMatrix = Matrix<Z>;

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

namespace detail {

// scale each row to integers; returns the integer matrix and the row scales
inline std::pair<IntMatrix, std::vector<Z>> clear_row_denominators(const RationalMatrix& a) {
  IntMatrix m(a.rows(), a.cols());
  std::vector<Z> scale(a.rows(), Z(1));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Z l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) l = lcm_z(l, a(i, j).get_den());
    scale[i] = l;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Q v = a(i, j) * Q(l);
      m(i, j) = v.get_num();
    }
  }
  return {m, scale};
}

}  // namespace detail

// Bareiss fraction-free elimination
inline Z det_bareiss(IntMatrix m) {
  const std::size_t n = m.rows();
  if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
  if (n == 0) return 1;
  int sign = 1;
  Z prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Z t = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

inline Q det(const RationalMatrix& a) {
  auto [m, scale] = detail::clear_row_denominators(a);
  Z d = det_bareiss(std::move(m));
  Z s = 1;
  for (const auto& x : scale) s *= x;
  return make_q(d, s);
}

// fraction-free Gauss-Jordan on [D a | I]
inline RationalMatrix inverse(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  if (!a.square()) throw std::invalid_argument("inverse of non-square matrix");
  auto [m0, scale] = detail::clear_row_denominators(a);
  IntMatrix m(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = m0(i, j);
    m(i, n + i) = 1;
  }
  Z prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    if (p != k)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(m(k, j), m(p, j));
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      Z f = m(i, k);
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        Z t = m(k, k) * m(i, j) - f * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  RationalMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      inv(i, j) = make_q(m(i, n + j) * scale[j], prev);
  return inv;
}

inline RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Q(m(i, j));
  return r;
}

inline bool is_integral(const RationalMatrix& m) {
  for (const auto& x : m.data())
    if (!is_integral(x)) return false;
  return true;
}

inline bool is_unipotent_upper(const RationalMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (m(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

}  // namespace gln
