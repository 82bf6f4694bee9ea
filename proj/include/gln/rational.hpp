#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace gln {

using Z = mpz_class;
using Q = mpq_class;

inline Q make_q(long num, long den = 1) {
  Q r(num, den);
  r.canonicalize();
  return r;
}

inline Q make_q(const Z& num, const Z& den) {
  Q r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integral(const Q& x) { return x.get_den() == 1; }

inline Z floor_q(const Q& x) {
  Z r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

// fractional part in [0, 1)
inline Q frac(const Q& x) { return x - Q(floor_q(x)); }

inline Z lcm_z(const Z& a, const Z& b) {
  Z r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Z gcd_z(const Z& a, const Z& b) {
  Z r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline int64_t to_i64(const Z& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
  return z.get_si();
}

inline int64_t mod_pos(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// modular inverse; throws when gcd(a, m) != 1
inline int64_t inv_mod(int64_t a, int64_t m) {
  if (m == 1) return 0;
  Z r, aa = Z(static_cast<long>(mod_pos(a, m)));
  Z mm = Z(static_cast<long>(m));
  if (mpz_invert(r.get_mpz_t(), aa.get_mpz_t(), mm.get_mpz_t()) == 0)
    throw std::domain_error("no inverse of " + std::to_string(a) + " mod " + std::to_string(m));
  return r.get_si();
}

inline bool is_prime(int64_t p) {
  if (p < 2) return false;
  for (int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::string to_string(const Q& x) { return x.get_str(); }

}  // namespace gln
