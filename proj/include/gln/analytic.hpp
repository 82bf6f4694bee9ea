#pragma once

#include <gln/exactmat.hpp>
#include <gln/gamma.hpp>
#include <gln/hecke.hpp>
#include <gln/weyl.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

namespace gln {

struct JacobianCheck {
  bool equal = false;
  Q lhs_squared, rhs_squared;
};

// scaling of x -> iota(N) x iota(N)^{-1} on U_w against ({}^wN)^eta N^eta, on squares
inline JacobianCheck jacobian_identity_check(const WeylElement& w, const std::vector<Q>& N) {
  if (!block_form(w)) throw std::invalid_argument("jacobian check needs a block-form w");
  const int n = w.n();
  if (static_cast<int>(N.size()) != n - 1) throw std::invalid_argument("N has wrong length");
  std::vector<Q> pre(n, Q(1));
  for (int k = 1; k <= n - 1; ++k) pre[k] = pre[k - 1] * N[k - 1];
  Q lhs = 1;
  for (auto [a, b] : u_w_positions(w)) lhs *= pre[n - a] / pre[n - b];
  auto wN = w_conjugated_y(w, N);
  Q rhs = 1;
  for (int j = 1; j <= n - 1; ++j) {
    Q base = wN[j - 1] * N[j - 1];
    for (int e = 0; e < j * (n - j); ++e) rhs *= base;
  }
  JacobianCheck r;
  r.lhs_squared = lhs * lhs;
  r.rhs_squared = rhs;
  r.equal = r.lhs_squared == r.rhs_squared;
  return r;
}

struct DeltaIdentityCheck {
  bool identity_holds = false;
  bool lower_bound_holds = false;
};

// Delta_j(iota(B) c^* w x iota(y))^2 = Delta_j(w x iota(y))^2 c_j^2 (prod_{i<=j} B_1...B_{i-1})^2
// and Delta_j(w x)^2 >= 1
inline DeltaIdentityCheck delta_product_identity_check(const WeylElement& w,
                                                       const RationalMatrix& x,
                                                       const std::vector<Q>& y,
                                                       const std::vector<Q>& B,
                                                       const CVector& c) {
  const int n = w.n();
  RationalMatrix wx = w.matrix() * x;
  RationalMatrix g2 = wx * iota(y);
  RationalMatrix g1 = iota(B) * cstar(c) * g2;
  auto d1 = gram_minor_squares(g1);
  auto d2 = gram_minor_squares(g2);
  auto d0 = gram_minor_squares(wx);
  DeltaIdentityCheck r;
  r.identity_holds = true;
  r.lower_bound_holds = true;
  Q bprod = 1, acc = 1;
  for (int j = 1; j <= n; ++j) {
    acc *= bprod;  // prod_{i=1}^{j} B_1 ... B_{i-1}
    Q cj = c_at(c, j);
    if (d1[j - 1] != d2[j - 1] * cj * cj * acc * acc) r.identity_holds = false;
    if (d0[j - 1] < 1) r.lower_bound_holds = false;
    if (j <= n - 1) bprod *= B[j - 1];
  }
  return r;
}

namespace detail {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// uniform in [0, 1), a pure function of (seed, counter)
inline double counter_uniform(uint64_t seed, uint64_t counter) {
  uint64_t h = splitmix64(seed ^ splitmix64(counter));
  return (h >> 11) * 0x1.0p-53;
}

inline double gram_det(const std::vector<std::vector<double>>& rows) {
  const std::size_t j = rows.size();
  std::vector<std::vector<double>> g(j, std::vector<double>(j));
  for (std::size_t a = 0; a < j; ++a)
    for (std::size_t b = 0; b < j; ++b) {
      double s = 0;
      for (std::size_t k = 0; k < rows[a].size(); ++k) s += rows[a][k] * rows[b][k];
      g[a][b] = s;
    }
  double d = 1;
  for (std::size_t k = 0; k < j; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < j; ++i)
      if (std::abs(g[i][k]) > std::abs(g[p][k])) p = i;
    if (g[p][k] == 0) return 0;
    if (p != k) {
      std::swap(g[p], g[k]);
      d = -d;
    }
    d *= g[k][k];
    for (std::size_t i = k + 1; i < j; ++i) {
      double f = g[i][k] / g[k][k];
      for (std::size_t l = k; l < j; ++l) g[i][l] -= f * g[k][l];
    }
  }
  return d;
}

}  // namespace detail

struct VolumeQuery {
  int n = 3;
  std::vector<double> B;
  uint64_t samples = 100000;
  uint64_t seed = 1;
  int threads = 1;
};

struct VolumeEstimate {
  double mean = 0, stderr_ = 0, lo = 0, hi = 0;
  double box = 0;
  uint64_t hits = 0, samples = 0;
};

// Monte-Carlo volume of {x in U_{w_*} : Delta_j(w_* x) <= B_j} over the box [-b, b]
inline VolumeEstimate volume_estimate(const VolumeQuery& q) {
  if (q.samples == 0) throw std::invalid_argument("samples must be positive");
  if (static_cast<int>(q.B.size()) != q.n - 1) throw std::invalid_argument("B has wrong length");
  const int n = q.n;
  const WeylElement w = WeylElement::w_star(n);
  const auto pos = u_w_positions(w);
  const int dim = static_cast<int>(pos.size());
  double bmax = 0;
  bool degenerate = false;
  for (double x : q.B) {
    bmax = std::max(bmax, x);
    if (x < 1) degenerate = true;
  }
  const double b = 1 + bmax;
  VolumeEstimate est;
  est.samples = q.samples;
  est.box = std::pow(2 * b, dim);
  if (degenerate) return est;

  auto count = [&](uint64_t from, uint64_t to) {
    uint64_t hits = 0;
    std::vector<std::vector<double>> x(n, std::vector<double>(n, 0.0));
    for (uint64_t s = from; s < to; ++s) {
      for (int i = 0; i < n; ++i) {
        std::fill(x[i].begin(), x[i].end(), 0.0);
        x[i][i] = 1;
      }
      for (int k = 0; k < dim; ++k) {
        double u = detail::counter_uniform(q.seed, s * dim + k);
        x[pos[k].first - 1][pos[k].second - 1] = (2 * u - 1) * b;
      }
      bool in = true;
      for (int j = 1; j <= n - 1 && in; ++j) {
        std::vector<std::vector<double>> rows;
        for (int i = n - j + 1; i <= n; ++i) rows.push_back(x[w(i) - 1]);
        in = detail::gram_det(rows) <= q.B[j - 1] * q.B[j - 1];
      }
      hits += in;
    }
    return hits;
  };

  const int T = std::max(1, q.threads);
  std::vector<uint64_t> part(T, 0);
  if (T == 1) {
    part[0] = count(0, q.samples);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < T; ++t)
      pool.emplace_back([&, t] {
        part[t] = count(q.samples * t / T, q.samples * (t + 1) / T);
      });
    for (auto& th : pool) th.join();
  }
  for (auto h : part) est.hits += h;
  const double p = double(est.hits) / double(q.samples);
  est.mean = est.box * p;
  est.stderr_ = est.box * std::sqrt(p * (1 - p) / double(q.samples));
  est.lo = est.mean - 1.96 * est.stderr_;
  est.hi = est.mean + 1.96 * est.stderr_;
  return est;
}

struct MellinPoint {
  SatakeParams mu;
  std::vector<cplx> s;
};

namespace detail {

inline cplx gamma_checked(cplx z) {
  if (distance_to_pole(z) < 1e-6) throw std::domain_error("Mellin point too close to a gamma pole");
  return cgamma(z);
}

}  // namespace detail

// verbatim = true uses Gamma(s_2 + mu_2) as the sixth factor for n = 3
inline cplx whittaker_mellin(const MellinPoint& p, bool verbatim = false) {
  const auto& m = p.mu.mu;
  using detail::gamma_checked;
  if (m.size() == 2) {
    if (p.s.size() != 1) throw std::invalid_argument("n = 2 needs one s");
    return gamma_checked(p.s[0] + m[0]) * gamma_checked(p.s[0] + m[1]);
  }
  if (m.size() == 3) {
    if (p.s.size() != 2) throw std::invalid_argument("n = 3 needs two s");
    const cplx s1 = p.s[0], s2 = p.s[1];
    cplx sixth = verbatim ? gamma_checked(s2 + m[1]) : gamma_checked(s2 - m[2]);
    cplx num = gamma_checked(s1 + m[0]) * gamma_checked(s1 + m[1]) * gamma_checked(s1 + m[2]) *
               gamma_checked(s2 - m[0]) * gamma_checked(s2 - m[1]) * sixth;
    return num / cgamma(s1 + s2);
  }
  throw std::invalid_argument("Mellin transform implemented for n = 2, 3 only");
}

struct ResidueCheck {
  bool holds = false;
  cplx lhs, rhs;
  double rel_error = 0;
};

// W^dagger(-mu_j, s2) against W^*_{mu^(j)}(s^(j)) prod_{k != j} Gamma(1 + mu_k - mu_j)
inline ResidueCheck residue_check_n3(const std::vector<cplx>& mu, cplx s2, int j,
                                     bool verbatim = false, double tol = 1e-8) {
  if (mu.size() != 3) throw std::invalid_argument("residue check is for n = 3");
  if (j < 1 || j > 3) throw std::invalid_argument("j in 1..3");
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      if (std::abs(mu[a] - mu[b]) < 1e-9) throw std::domain_error("mu entries must be distinct");
  const cplx mj = mu[j - 1];
  double r = 0.1;
  for (int k = 0; k < 3; ++k)
    for (int m = 0; m <= 3; ++m) {
      if (m == 0) continue;
      r = std::min(r, 0.25 * std::abs(mu[k] - mj + double(m)));
    }
  auto f = [&](cplx s1) {
    MellinPoint p{SatakeParams{mu, 0}, {s1, s2}};
    cplx v = whittaker_mellin(p, verbatim);
    for (auto m : mu) v *= (s1 + m);
    return v;
  };
  const int K = 64;
  cplx acc = 0;
  for (int k = 0; k < K; ++k) {
    double th = 2 * std::numbers::pi * (k + 0.5) / K;
    acc += f(-mj + std::polar(r, th));
  }
  ResidueCheck out;
  out.lhs = acc / double(K);
  std::vector<cplx> rest;
  cplx gam = 1;
  for (int k = 0; k < 3; ++k) {
    if (k == j - 1) continue;
    rest.push_back(mu[k] + mj / 2.0);
    gam *= cgamma(1.0 + mu[k] - mj);
  }
  MellinPoint p2{SatakeParams{rest, 0}, {s2 + mj / 2.0}};
  out.rhs = whittaker_mellin(p2) * gam;
  out.rel_error = std::abs(out.lhs - out.rhs) / std::max(std::abs(out.rhs), 1e-300);
  out.holds = out.rel_error <= tol;
  return out;
}

}  // namespace gln
