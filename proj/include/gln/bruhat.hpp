#pragma once

#include <gln/exactmat.hpp>
#include <gln/matrix.hpp>
#include <gln/weyl.hpp>

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace gln {

// gamma = x1 * v * cstar(c) * w * x2, v the torus sign
struct BruhatData {
  RationalMatrix x1;
  SignMatrix v;
  CVector c;
  WeylElement w;
  RationalMatrix x2;

  friend bool operator==(const BruhatData& a, const BruhatData& b) {
    return a.x1 == b.x1 && a.v == b.v && a.c == b.c && a.w == b.w && a.x2 == b.x2;
  }
};

inline RationalMatrix recompose(const BruhatData& b) {
  return b.x1 * b.v.matrix() * cstar(b.c) * b.w.matrix() * b.x2;
}

inline BruhatData decompose(const RationalMatrix& g) {
  const int n = static_cast<int>(g.rows());
  Q d = det(g);
  if (d == 0) throw std::domain_error("decompose: singular matrix");
  if (abs(d) != 1) throw std::domain_error("decompose: |det| must be 1");

  std::vector<std::vector<Q>> red(n + 1);
  std::vector<int> piv(n + 1, 0);
  std::vector<bool> claimed(n + 1, false);
  std::vector<Q> diag(n + 1);
  RationalMatrix x2 = RationalMatrix::identity(n);
  for (int i = n; i >= 1; --i) {
    std::vector<Q> r = g.row(i - 1);
    for (int k = n; k > i; --k) {
      const Q f = r[piv[k] - 1] / red[k][piv[k] - 1];
      if (f == 0) continue;
      for (int j = 0; j < n; ++j) r[j] -= f * red[k][j];
    }
    int p = 0;
    for (int j = 1; j <= n; ++j)
      if (!claimed[j] && r[j - 1] != 0) {
        p = j;
        break;
      }
    if (p == 0) throw std::logic_error("decompose: no pivot");
    claimed[p] = true;
    piv[i] = p;
    diag[i] = r[p - 1];
    for (int j = 1; j <= n; ++j) x2(p - 1, j - 1) = r[j - 1] / diag[i];
    red[i] = std::move(r);
  }

  BruhatData b;
  b.w = WeylElement(std::vector<int>(piv.begin() + 1, piv.end()));
  std::vector<int> s(n);
  for (int i = 1; i <= n; ++i) s[i - 1] = diag[i] > 0 ? 1 : -1;
  b.v = SignMatrix(s);
  b.c.assign(n - 1, Q(1));
  Q acc = 1;
  for (int j = 1; j <= n - 1; ++j) {
    acc *= abs(diag[n - j + 1]);
    b.c[j - 1] = acc;
  }
  b.x2 = x2;
  RationalMatrix t(n, n);
  for (int i = 1; i <= n; ++i) t(i - 1, i - 1) = diag[i];
  b.x1 = g * inverse(t * b.w.matrix() * x2);
  if (!is_unipotent_upper(b.x1)) throw std::logic_error("decompose: x1 not unipotent");
  return b;
}

// free entries of x1 and x2 reduced into [0, 1), superdiagonal by superdiagonal
inline BruhatData canonicalize(const BruhatData& in) {
  BruhatData b = in;
  const int n = static_cast<int>(b.x1.rows());
  for (int dist = 1; dist < n; ++dist)
    for (int i = 0; i + dist < n; ++i) {
      const int j = i + dist;
      Z k = floor_q(b.x1(i, j));
      if (k == 0) continue;
      for (int l = 0; l < n; ++l) b.x1(i, l) -= Q(k) * b.x1(j, l);
    }
  auto pos = u_w_positions(b.w);
  std::stable_sort(pos.begin(), pos.end(), [](const Position& a, const Position& c) {
    return a.second - a.first < c.second - c.first;
  });
  for (auto [a, c] : pos) {
    Z k = floor_q(b.x2(a - 1, c - 1));
    if (k == 0) continue;
    for (int l = 0; l < n; ++l) b.x2(l, c - 1) -= Q(k) * b.x2(l, a - 1);
  }
  return b;
}

inline bool is_in_gamma0(const RationalMatrix& g, long q) {
  if (!is_integral(g)) return false;
  if (det(g) != 1) return false;
  const std::size_t n = g.rows();
  for (std::size_t j = 0; j + 1 < n; ++j) {
    Z r;
    Z qq = q;
    mpz_fdiv_r(r.get_mpz_t(), g(n - 1, j).get_num_mpz_t(), qq.get_mpz_t());
    if (r != 0) return false;
  }
  return true;
}

}  // namespace gln
