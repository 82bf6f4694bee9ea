#pragma once

#include <gln/gln.hpp>

#include <random>

namespace gln::sample {

// random element of SL_n(Z) with entries bounded by max_entry
inline IntMatrix random_sl(int n, std::mt19937_64& rng, long max_entry = 50, int steps = 12) {
  std::uniform_int_distribution<int> idx(0, n - 1), coef(-3, 3);
  for (;;) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    bool ok = true;
    for (int s = 0; s < steps && ok; ++s) {
      int a = idx(rng), b = idx(rng);
      if (a == b) continue;
      int k = coef(rng);
      for (int j = 0; j < n; ++j) {
        m(a, j) += k * m(b, j);
        if (abs(m(a, j)) > max_entry) ok = false;
      }
    }
    if (ok) return m;
  }
}

// random element of SL_n(Z) whose bottom row is 0 mod q off the last entry
inline IntMatrix random_gamma0(int n, long q, std::mt19937_64& rng) {
  for (;;) {
    IntMatrix m = random_sl(n, rng, 200, 16);
    bool ok = true;
    for (int j = 0; j + 1 < n; ++j)
      if (m(n - 1, j) % q != 0) ok = false;
    if (ok) return m;
  }
}

inline std::vector<Q> random_positive(std::size_t k, std::mt19937_64& rng, int num = 9, int den = 5) {
  std::uniform_int_distribution<int> P(1, num), D(1, den);
  std::vector<Q> v;
  for (std::size_t i = 0; i < k; ++i) v.push_back(make_q(P(rng), D(rng)));
  return v;
}

}  // namespace gln::sample
