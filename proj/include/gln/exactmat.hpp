#pragma once

#include <gln/matrix.hpp>
#include <gln/weyl.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace gln {

// (Delta_1^2, ..., Delta_n^2): Gram determinants of the last j rows
inline std::vector<Q> gram_minor_squares(const RationalMatrix& g) {
  const std::size_t n = g.rows();
  if (det(g) == 0) throw std::domain_error("gram_minor_squares: singular matrix");
  std::vector<Q> out(n);
  for (std::size_t j = 1; j <= n; ++j) {
    RationalMatrix gram(j, j);
    for (std::size_t a = 0; a < j; ++a)
      for (std::size_t b = a; b < j; ++b) {
        Q s = 0;
        for (std::size_t k = 0; k < n; ++k) s += g(n - j + a, k) * g(n - j + b, k);
        gram(a, b) = s;
        gram(b, a) = s;
      }
    out[j - 1] = det(gram);
  }
  return out;
}

// Y_j^2 = Delta_{j+1}^2 Delta_{j-1}^2 / Delta_j^4
inline std::vector<Q> iwasawa_y_squared(const RationalMatrix& g) {
  auto d = gram_minor_squares(g);
  const std::size_t n = g.rows();
  std::vector<Q> y(n - 1);
  for (std::size_t j = 1; j + 1 <= n; ++j) {
    Q prev = j >= 2 ? d[j - 2] : Q(1);
    y[j - 1] = d[j] * prev / (d[j - 1] * d[j - 1]);
  }
  return y;
}

inline std::vector<double> iwasawa_y(const RationalMatrix& g) {
  auto y2 = iwasawa_y_squared(g);
  std::vector<double> y;
  for (const auto& v : y2) y.push_back(std::sqrt(v.get_d()));
  return y;
}

inline std::vector<Q> s_matrix_row(int n, int i) {
  std::vector<Q> r(n - 1);
  for (int j = 1; j <= n - 1; ++j)
    r[j - 1] = i <= j ? make_q(long(i) * (n - j), n) : make_q(long(j) * (n - i), n);
  return r;
}

inline RationalMatrix s_matrix(int n) {
  if (n < 2) throw std::invalid_argument("s_matrix: n >= 2");
  RationalMatrix s(n - 1, n - 1);
  for (int i = 1; i <= n - 1; ++i) {
    auto r = s_matrix_row(n, i);
    for (int j = 1; j <= n - 1; ++j) s(i - 1, j - 1) = r[j - 1];
  }
  return s;
}

// -2 on the diagonal, 1 off it
inline RationalMatrix tridiagonal(int m) {
  RationalMatrix t(m, m);
  for (int i = 0; i < m; ++i) {
    t(i, i) = -2;
    if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = 1;
  }
  return t;
}

inline std::vector<Q> eta(int n) {
  if (n < 2) throw std::invalid_argument("eta: n >= 2");
  std::vector<Q> e(n - 1);
  for (int j = 1; j <= n - 1; ++j) e[j - 1] = make_q(long(j) * (n - j), 2);
  return e;
}

inline std::vector<double> delta_from_y(double det_abs, const std::vector<double>& Y) {
  if (det_abs <= 0) throw std::domain_error("delta_from_y: det_abs must be positive");
  for (double y : Y)
    if (!(y > 0)) throw std::domain_error("delta_from_y: Y must be positive");
  const int n = static_cast<int>(Y.size()) + 1;
  std::vector<double> d(n - 1);
  for (int j = 1; j <= n - 1; ++j) {
    double lg = double(j) / n * std::log(det_abs);
    for (int i = 1; i <= n - 1; ++i) {
      double s = i <= j ? double(i) * (n - j) / n : double(j) * (n - i) / n;
      lg -= s * std::log(Y[i - 1]);
    }
    d[j - 1] = std::exp(lg);
  }
  return d;
}

inline RationalMatrix cstar(const CVector& c) {
  const int n = static_cast<int>(c.size()) + 1;
  for (const auto& x : c)
    if (x <= 0) throw std::domain_error("cstar: moduli must be positive");
  std::vector<Q> d(n);
  for (int i = 1; i <= n; ++i) d[i - 1] = c_at(c, n - i + 1) / c_at(c, n - i);
  return RationalMatrix::diagonal(d);
}

inline RationalMatrix iota(const std::vector<Q>& y) {
  const int n = static_cast<int>(y.size()) + 1;
  std::vector<Q> d(n, Q(1));
  for (int i = n - 1; i >= 1; --i) {
    if (y[n - i - 1] == 0) throw std::domain_error("iota: zero entry");
    d[i - 1] = d[i] * y[n - i - 1];
  }
  return RationalMatrix::diagonal(d);
}

inline std::vector<Q> y_of_cstar(const CVector& c) {
  const int n = static_cast<int>(c.size()) + 1;
  std::vector<Q> y(n - 1);
  for (int j = 1; j <= n - 1; ++j)
    y[j - 1] = c_at(c, j - 1) * c_at(c, j + 1) / (c_at(c, j) * c_at(c, j));
  return y;
}

// y(c*)^{2 eta} (c_1 ... c_{n-1})^2; equals 1
inline Q ceta_squared(const CVector& c) {
  const int n = static_cast<int>(c.size()) + 1;
  auto y = y_of_cstar(c);
  Q r = 1;
  for (int j = 1; j <= n - 1; ++j) {
    Q p;
    mpz_pow_ui(p.get_num_mpz_t(), y[j - 1].get_num_mpz_t(), j * (n - j));
    mpz_pow_ui(p.get_den_mpz_t(), y[j - 1].get_den_mpz_t(), j * (n - j));
    r *= p;
    r *= c[j - 1] * c[j - 1];
  }
  return r;
}

template <class T>
std::vector<T> w_conjugated_y(const WeylElement& w, const std::vector<T>& y) {
  const int n = w.n();
  std::vector<T> pre(n, T(1));
  for (int k = 1; k <= n - 1; ++k) pre[k] = pre[k - 1] * y[k - 1];
  std::vector<T> out(n - 1);
  for (int j = 1; j <= n - 1; ++j) out[j - 1] = pre[n - w(n - j + 1)] / pre[n - w(n - j)];
  return out;
}

}  // namespace gln
