#pragma once

#include <gln/rational.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace gln {

namespace detail {

using Poly = std::vector<int64_t>;  // low degree first

inline Poly poly_div_exact(Poly num, const Poly& den) {
  const std::size_t dn = den.size() - 1;
  if (den.back() != 1) throw std::logic_error("divisor must be monic");
  Poly quo(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    int64_t a = num[k];
    quo[k - dn] = a;
    if (a == 0) continue;
    for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= a * den[i];
  }
  for (std::size_t i = 0; i < dn; ++i)
    if (num[i] != 0) throw std::logic_error("inexact polynomial division");
  return quo;
}

inline const Poly& cyclotomic_poly(int64_t L) {
  static std::mutex mu;
  static std::map<int64_t, Poly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(L);
    if (it != cache.end()) return it->second;
  }
  Poly p(L + 1, 0);
  p[0] = -1;
  p[L] = 1;
  for (int64_t d = 1; d < L; ++d)
    if (L % d == 0) p = poly_div_exact(p, cyclotomic_poly(d));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(L, std::move(p)).first->second;
}

}  // namespace detail

// sum_k coeffs[k] e(k/L)
class CyclotomicSum {
 public:
  CyclotomicSum() : L_(1), c_(1, 0) {}
  explicit CyclotomicSum(int64_t L) : L_(L), c_(L, 0) {
    if (L < 1) throw std::invalid_argument("modulus must be positive");
  }
  CyclotomicSum(int64_t L, std::vector<int64_t> coeffs) : L_(L), c_(std::move(coeffs)) {
    if (L < 1 || static_cast<int64_t>(c_.size()) != L)
      throw std::invalid_argument("coefficient vector must have length L");
  }

  static CyclotomicSum integer(int64_t k) {
    CyclotomicSum s(1);
    s.c_[0] = k;
    return s;
  }
  static CyclotomicSum root(int64_t k, int64_t L) {
    CyclotomicSum s(L);
    s.c_[mod_pos(k, L)] = 1;
    return s;
  }

  int64_t modulus() const { return L_; }
  const std::vector<int64_t>& coeffs() const { return c_; }

  void add_root(int64_t k, int64_t mult = 1) { c_[mod_pos(k, L_)] += mult; }

  CyclotomicSum lift(int64_t L2) const {
    if (L2 % L_ != 0) throw std::invalid_argument("lift target must be a multiple of L");
    CyclotomicSum s(L2);
    const int64_t f = L2 / L_;
    for (int64_t k = 0; k < L_; ++k) s.c_[k * f] = c_[k];
    return s;
  }

  // reduced modulo the L-th cyclotomic polynomial: coeffs[k] = 0 for k >= phi(L)
  CyclotomicSum canonical() const {
    const auto& phi = detail::cyclotomic_poly(L_);
    const int64_t deg = static_cast<int64_t>(phi.size()) - 1;
    CyclotomicSum s = *this;
    for (int64_t k = L_ - 1; k >= deg; --k) {
      int64_t a = s.c_[k];
      if (a == 0) continue;
      for (int64_t i = 0; i <= deg; ++i) s.c_[k - deg + i] -= a * phi[i];
    }
    return s;
  }

  std::complex<long double> value() const {
    std::complex<long double> z = 0;
    const long double tau = 2 * std::numbers::pi_v<long double>;
    for (int64_t k = 0; k < L_; ++k)
      if (c_[k] != 0) z += static_cast<long double>(c_[k]) * std::polar(1.0L, tau * k / L_);
    return z;
  }
  std::complex<double> complex() const {
    auto z = value();
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
  }

  bool is_zero() const {
    for (int64_t x : canonical().c_)
      if (x != 0) return false;
    return true;
  }
  bool is_integer() const {
    auto s = canonical();
    for (int64_t k = 1; k < L_; ++k)
      if (s.c_[k] != 0) return false;
    return true;
  }
  int64_t integer_value() const {
    if (!is_integer()) throw std::domain_error("cyclotomic value is not a rational integer");
    return canonical().c_[0];
  }

  CyclotomicSum conj() const {
    CyclotomicSum s(L_);
    for (int64_t k = 0; k < L_; ++k) s.c_[mod_pos(-k, L_)] += c_[k];
    return s;
  }

  friend CyclotomicSum operator+(const CyclotomicSum& a, const CyclotomicSum& b) {
    const int64_t L = std::lcm(a.L_, b.L_);
    CyclotomicSum x = a.lift(L), y = b.lift(L);
    for (int64_t k = 0; k < L; ++k) x.c_[k] += y.c_[k];
    return x;
  }
  CyclotomicSum& operator+=(const CyclotomicSum& b) { return *this = *this + b; }

  friend CyclotomicSum operator*(const CyclotomicSum& a, const CyclotomicSum& b) {
    const int64_t L = std::lcm(a.L_, b.L_);
    CyclotomicSum x = a.lift(L), y = b.lift(L), z(L);
    for (int64_t i = 0; i < L; ++i) {
      if (x.c_[i] == 0) continue;
      for (int64_t j = 0; j < L; ++j)
        if (y.c_[j] != 0) z.c_[(i + j) % L] += x.c_[i] * y.c_[j];
    }
    return z;
  }

  friend bool operator==(const CyclotomicSum& a, const CyclotomicSum& b) {
    const int64_t L = std::lcm(a.L_, b.L_);
    return a.lift(L).canonical().c_ == b.lift(L).canonical().c_;
  }
  friend bool operator!=(const CyclotomicSum& a, const CyclotomicSum& b) { return !(a == b); }

 private:
  int64_t L_;
  std::vector<int64_t> c_;
};

}  // namespace gln
