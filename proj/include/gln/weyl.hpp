#pragma once

#include <gln/matrix.hpp>

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace gln {

using CVector = std::vector<Q>;

template <class Int>
CVector to_cvector(const std::vector<Int>& c) {
  CVector r;
  r.reserve(c.size());
  for (const auto& x : c) r.emplace_back(static_cast<long>(x));
  return r;
}

// c_k with c_0 = c_n = 1
inline Q c_at(const CVector& c, int k) {
  if (k <= 0 || k > static_cast<int>(c.size())) return Q(1);
  return c[k - 1];
}

// Permutation of {1..n}, w(i) = j iff matrix entry (i, j) is 1.
class WeylElement {
 public:
  WeylElement() = default;
  explicit WeylElement(std::vector<int> oneline) : p_(std::move(oneline)) {
    std::vector<bool> seen(p_.size() + 1, false);
    for (int x : p_) {
      if (x < 1 || x > static_cast<int>(p_.size()) || seen[x])
        throw std::invalid_argument("not a permutation of 1..n");
      seen[x] = true;
    }
  }

  static WeylElement identity(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i + 1;
    return WeylElement(p);
  }
  static WeylElement long_element(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = n - i;
    return WeylElement(p);
  }
  // exchanges 1 and n
  static WeylElement w_star(int n) {
    auto w = identity(n).p_;
    std::swap(w.front(), w.back());
    return WeylElement(w);
  }
  // blocks I_{d_1}, ..., I_{d_r} on the anti-diagonal, I_{d_1} top right
  static WeylElement from_blocks(const std::vector<int>& d) {
    int n = 0;
    for (int x : d) {
      if (x < 1) throw std::invalid_argument("block sizes must be positive");
      n += x;
    }
    std::vector<int> p;
    int hi = n;
    for (int x : d) {
      for (int k = hi - x + 1; k <= hi; ++k) p.push_back(k);
      hi -= x;
    }
    return WeylElement(p);
  }

  int n() const { return static_cast<int>(p_.size()); }
  int operator()(int i) const { return p_[i - 1]; }
  const std::vector<int>& oneline() const { return p_; }

  WeylElement inverse() const {
    std::vector<int> q(p_.size());
    for (int i = 1; i <= n(); ++i) q[p_[i - 1] - 1] = i;
    return WeylElement(q);
  }

  int sign() const {
    int s = 1;
    for (int i = 0; i < n(); ++i)
      for (int j = i + 1; j < n(); ++j)
        if (p_[i] > p_[j]) s = -s;
    return s;
  }

  RationalMatrix matrix() const {
    RationalMatrix m(n(), n());
    for (int i = 1; i <= n(); ++i) m(i - 1, p_[i - 1] - 1) = 1;
    return m;
  }

  bool is_identity() const { return *this == identity(n()); }

  std::string str() const {
    std::ostringstream os;
    for (int i = 0; i < n(); ++i) os << (i ? "," : "") << p_[i];
    return os.str();
  }

  friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.p_ == b.p_; }
  friend bool operator<(const WeylElement& a, const WeylElement& b) { return a.p_ < b.p_; }

 private:
  std::vector<int> p_;
};

inline std::vector<WeylElement> all_weyl_elements(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i + 1;
  std::vector<WeylElement> out;
  do {
    out.emplace_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// v = diag(v_1, ..., v_n), entries +-1
class SignMatrix {
 public:
  SignMatrix() = default;
  explicit SignMatrix(std::vector<int> s) : s_(std::move(s)) {
    for (int x : s_)
      if (x != 1 && x != -1) throw std::invalid_argument("sign entries must be +-1");
  }
  static SignMatrix ones(int n) { return SignMatrix(std::vector<int>(n, 1)); }
  // bit k of mask set means v_{k+1} = -1
  static SignMatrix from_mask(int n, unsigned mask) {
    std::vector<int> s(n);
    for (int k = 0; k < n; ++k) s[k] = (mask >> k) & 1u ? -1 : 1;
    return SignMatrix(s);
  }

  int n() const { return static_cast<int>(s_.size()); }
  int operator()(int i) const { return s_[i - 1]; }
  const std::vector<int>& signs() const { return s_; }
  int det() const {
    int d = 1;
    for (int x : s_) d *= x;
    return d;
  }
  RationalMatrix matrix() const {
    RationalMatrix m(n(), n());
    for (int i = 0; i < n(); ++i) m(i, i) = s_[i];
    return m;
  }
  std::string str() const {
    std::ostringstream os;
    for (int i = 0; i < n(); ++i) os << (i ? "," : "") << s_[i];
    return os.str();
  }
  friend bool operator==(const SignMatrix& a, const SignMatrix& b) { return a.s_ == b.s_; }
  friend bool operator<(const SignMatrix& a, const SignMatrix& b) { return a.s_ < b.s_; }

 private:
  std::vector<int> s_;
};

inline std::vector<SignMatrix> all_signs(int n) {
  std::vector<SignMatrix> out;
  for (unsigned m = 0; m < (1u << n); ++m) out.push_back(SignMatrix::from_mask(n, m));
  return out;
}

// (1, ..., 1, det w): the sign attached to the unsubscripted sum
inline SignMatrix principal_sign(const WeylElement& w) {
  std::vector<int> s(w.n(), 1);
  s.back() = w.sign();
  return SignMatrix(s);
}

// diagonal sign of the torus in the cell of w for the character sign v
inline SignMatrix torus_sign(const WeylElement& w, const SignMatrix& v) {
  std::vector<int> t(w.n());
  for (int i = 1; i <= w.n(); ++i) t[i - 1] = v(w(i));
  return SignMatrix(t);
}

inline SignMatrix character_sign(const WeylElement& w, const SignMatrix& vt) {
  std::vector<int> s(w.n());
  for (int i = 1; i <= w.n(); ++i) s[w(i) - 1] = vt(i);
  return SignMatrix(s);
}

using Position = std::pair<int, int>;

inline std::vector<Position> u_w_positions(const WeylElement& w) {
  std::vector<Position> out;
  for (int i = 1; i <= w.n(); ++i)
    for (int j = 1; j < i; ++j)
      if (w(i) < w(j)) out.emplace_back(w(i), w(j));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::optional<std::vector<int>> block_form(const WeylElement& w) {
  std::vector<int> d;
  int i = 1;
  while (i <= w.n()) {
    int len = 1;
    while (i + len <= w.n() && w(i + len) == w(i) + len) ++len;
    d.push_back(len);
    i += len;
  }
  if (WeylElement::from_blocks(d) == w) return d;
  return std::nullopt;
}

inline std::vector<WeylElement> block_form_elements(int n) {
  std::vector<WeylElement> out;
  for (unsigned cuts = 0; cuts < (1u << (n - 1)); ++cuts) {
    std::vector<int> d;
    int len = 1;
    for (int k = 0; k < n - 1; ++k) {
      if ((cuts >> k) & 1u) {
        d.push_back(len);
        len = 1;
      } else {
        ++len;
      }
    }
    d.push_back(len);
    out.push_back(WeylElement::from_blocks(d));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// argument of e(.) for theta_N(x): N_{n-1} x_{12} + ... + N_1 x_{n-1,n} mod 1
template <class Int>
Q theta(const std::vector<Int>& N, const RationalMatrix& x) {
  const int n = static_cast<int>(x.rows());
  if (static_cast<int>(N.size()) != n - 1) throw std::invalid_argument("theta: N has wrong length");
  Q s = 0;
  for (int i = 1; i < n; ++i) s += Q(static_cast<long>(N[n - i - 1])) * x(i - 1, i);
  return frac(s);
}

template <class Int>
Q theta_v(const std::vector<Int>& N, const RationalMatrix& x, const SignMatrix& v) {
  RationalMatrix y = x;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) y(i, j) *= v.signs()[i] * v.signs()[j];
  return theta(N, y);
}

template <class Int>
bool compatibility(const WeylElement& w, const SignMatrix& v, const std::vector<Int>& M,
                   const std::vector<Int>& N, const CVector& c) {
  const int n = w.n();
  for (int i = 1; i <= n - 1; ++i) {
    if (w(i) + 1 != w(i + 1)) continue;
    Q lhs = Q(static_cast<long>(M[n - i - 1])) * c_at(c, n - i + 1) * c_at(c, n - i - 1) /
            (c_at(c, n - i) * c_at(c, n - i));
    Q rhs = Q(v(w(i) + 1) * v(w(i))) * Q(static_cast<long>(N[n - w(i) - 1]));
    if (lhs != rhs) return false;
  }
  return true;
}

// theta_M(T w x w^{-1} T^{-1}) = theta_N(x) on the real group w^{-1} U w ∩ U,
// with T = vt c^*; checked on the additive basis of that group
template <class Int>
bool compatibility_via_character(const WeylElement& w, const SignMatrix& vt,
                                 const std::vector<Int>& M, const std::vector<Int>& N,
                                 const CVector& c) {
  const int n = w.n();
  auto uw = u_w_positions(w);
  std::vector<Q> t(n);
  for (int i = 1; i <= n; ++i) t[i - 1] = Q(vt(i)) * c_at(c, n - i + 1) / c_at(c, n - i);
  WeylElement wi = w.inverse();
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      if (std::binary_search(uw.begin(), uw.end(), Position{a, b})) continue;
      // T w E_ab w^{-1} T^{-1} = (t_i / t_j) E_{ij} with i = w^{-1}(a), j = w^{-1}(b)
      int i = wi(a), j = wi(b);
      if (i >= j) throw std::logic_error("conjugate is not upper triangular");
      Q lhs = 0;
      if (j == i + 1) lhs = Q(static_cast<long>(M[n - i - 1])) * t[i - 1] / t[j - 1];
      Q rhs = b == a + 1 ? Q(static_cast<long>(N[n - a - 1])) : Q(0);
      if (lhs != rhs) return false;
    }
  return true;
}

inline bool divisibility_ok(const WeylElement& w, long q, const CVector& c) {
  auto d = block_form(w);
  if (!d) throw std::invalid_argument("divisibility_ok: w has no block form");
  const int upto = w.n() - d->front();
  for (int j = 1; j <= upto; ++j) {
    Q r = c_at(c, j) / Q(q);
    if (!is_integral(r)) return false;
  }
  return true;
}

}  // namespace gln
