#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gln {

using cplx = std::complex<double>;

// local spectral parameters; place = 0 stands for the archimedean place
struct SatakeParams {
  std::vector<cplx> mu;
  int64_t place = 0;

  int n() const { return static_cast<int>(mu.size()); }

  bool sums_to_zero(double tol = 1e-12) const {
    cplx s = 0;
    for (auto z : mu) s += z;
    return std::abs(s) <= tol;
  }

  // {mu_j} = {-conj(mu_j)} as multisets
  bool unitary_symmetric(double tol = 1e-12) const {
    std::vector<bool> used(mu.size(), false);
    for (auto z : mu) {
      cplx t = -std::conj(z);
      bool hit = false;
      for (std::size_t k = 0; k < mu.size(); ++k)
        if (!used[k] && std::abs(mu[k] - t) <= tol) {
          used[k] = hit = true;
          break;
        }
      if (!hit) return false;
    }
    return true;
  }
};

inline double sigma_of(const SatakeParams& p) {
  double s = 0;
  for (auto z : p.mu) s = std::max(s, std::abs(z.real()));
  return s;
}

inline SatakeParams trivial_parameters(int n, int64_t place = 0) {
  SatakeParams p;
  p.place = place;
  for (int j = 0; j < n; ++j) p.mu.emplace_back((n - 1) / 2.0 - j, 0.0);
  return p;
}

struct HeckeSequence {
  int64_t p = 0;
  std::vector<cplx> values;  // lambda(p^0), ..., lambda(p^nu_max)
};

namespace detail {

inline std::vector<cplx> satake_roots(const SatakeParams& s) {
  if (s.place < 2) throw std::invalid_argument("Hecke eigenvalues need a finite prime place");
  std::vector<cplx> a;
  const double lp = std::log(static_cast<double>(s.place));
  for (auto m : s.mu) a.push_back(std::exp(m * lp));
  return a;
}

// e_0..e_n of the alpha_j
inline std::vector<cplx> elementary_symmetric(const std::vector<cplx>& a) {
  std::vector<cplx> e(a.size() + 1, 0.0);
  e[0] = 1;
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t k = j + 1; k >= 1; --k) e[k] += a[j] * e[k - 1];
  return e;
}

}  // namespace detail

// h_nu(p^{mu_1}, ..., p^{mu_n}) via h_nu = sum_k (-1)^{k+1} e_k h_{nu-k}
inline HeckeSequence hecke_eigenvalues(const SatakeParams& s, int nu_max) {
  auto a = detail::satake_roots(s);
  auto e = detail::elementary_symmetric(a);
  HeckeSequence h;
  h.p = s.place;
  h.values.assign(nu_max + 1, 0.0);
  h.values[0] = 1;
  const int n = s.n();
  for (int nu = 1; nu <= nu_max; ++nu) {
    cplx acc = 0;
    for (int k = 1; k <= std::min(n, nu); ++k)
      acc += (k % 2 ? 1.0 : -1.0) * e[k] * h.values[nu - k];
    h.values[nu] = acc;
  }
  return h;
}

// same coefficients by multiplying the geometric series one factor at a time
inline std::vector<cplx> hecke_by_product(const SatakeParams& s, int nu_max) {
  auto a = detail::satake_roots(s);
  std::vector<cplx> h(nu_max + 1, 0.0);
  h[0] = 1;
  for (auto alpha : a)
    for (int nu = 1; nu <= nu_max; ++nu) h[nu] += alpha * h[nu - 1];
  return h;
}

// sum_nu alpha_1^nu x^nu = prod_{j>=2} (1 - alpha_j x) sum_nu lambda(p^nu) x^nu,
// alpha_1 the root of largest modulus; returns the largest relative defect
inline double power_series_defect(const SatakeParams& s, int nu_max) {
  auto a = detail::satake_roots(s);
  std::size_t top = 0;
  for (std::size_t j = 1; j < a.size(); ++j)
    if (s.mu[j].real() > s.mu[top].real()) top = j;
  std::vector<cplx> poly{1.0};
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (j == top) continue;
    std::vector<cplx> nxt(poly.size() + 1, 0.0);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      nxt[k] += poly[k];
      nxt[k + 1] -= a[j] * poly[k];
    }
    poly = nxt;
  }
  auto lam = hecke_eigenvalues(s, nu_max).values;
  double worst = 0;
  for (int nu = 0; nu <= nu_max; ++nu) {
    cplx rhs = 0;
    double scale = 0;
    for (std::size_t k = 0; k < poly.size() && static_cast<int>(k) <= nu; ++k) {
      rhs += poly[k] * lam[nu - k];
      scale += std::abs(poly[k] * lam[nu - k]);
    }
    cplx lhs = std::pow(a[top], nu);
    scale = std::max({scale, std::abs(lhs), 1e-300});
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

struct LenstraVerdict {
  bool holds = false;
  int witness_j = 0;
  double log_lhs = 0, log_rhs = 0;
};

// max_{0<=j<=n-1} |lambda(p^{nu-j})| >= (2 p^sigma)^{1-n} p^{nu sigma}, compared in logs
inline LenstraVerdict lenstra_bound_check(const SatakeParams& s, int nu) {
  const int n = s.n();
  if (nu <= n) throw std::invalid_argument("need nu > n");
  auto lam = hecke_eigenvalues(s, nu).values;
  LenstraVerdict v;
  double best = -1;
  for (int j = 0; j <= n - 1; ++j) {
    double m = std::abs(lam[nu - j]);
    if (m > best) {
      best = m;
      v.witness_j = j;
    }
  }
  const double sigma = sigma_of(s);
  const double lp = std::log(static_cast<double>(s.place));
  v.log_lhs = best > 0 ? std::log(best) : -INFINITY;
  v.log_rhs = (1 - n) * (std::log(2.0) + sigma * lp) + nu * sigma * lp;
  v.holds = v.log_lhs >= v.log_rhs - 1e-9 * std::max(1.0, std::abs(v.log_rhs));
  return v;
}

}  // namespace gln
