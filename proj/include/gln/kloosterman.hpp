#pragma once

#include <gln/bruhat.hpp>
#include <gln/cyclotomic.hpp>
#include <gln/exactmat.hpp>
#include <gln/weyl.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace gln {

using IVec = std::vector<int64_t>;

struct KloostermanQuery {
  int n = 0;
  int64_t q = 1;
  WeylElement w;
  IVec M, N, c;
  SignMatrix v;  // character sign; the torus of the cell is torus_sign(w, v) c^*
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EnumOptions {
  std::optional<int64_t> denom_bound;  // default: per-row certified bound
  int threads = 1;
  uint64_t budget = 1000000000ULL;
  bool force = false;
};

// one double coset: superdiagonals of x1 and of the canonical x2
struct CosetRecord {
  std::vector<Q> x1_super;
  std::vector<Q> x2_super;
  RationalMatrix gamma;
};

struct CellEnumeration {
  std::vector<CosetRecord> cosets;
  uint64_t candidates = 0;
  std::vector<std::string> warnings;
};

struct KloostermanResult {
  CyclotomicSum value;
  uint64_t cosets = 0;
  uint64_t candidates = 0;
  bool gated = false;  // value forced to 0 without enumeration
  std::string gate_reason;
  std::vector<std::string> warnings;
};

namespace detail {

inline Z fdiv(const Z& a, const Z& b) {
  Z r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// unimodular U with G U = [I | 0]; false if the rows of G are not primitive
inline bool unimodular_completion(std::vector<std::vector<Z>> G, int n,
                                  std::vector<std::vector<Z>>& U) {
  const int m = static_cast<int>(G.size());
  U.assign(n, std::vector<Z>(n, Z(0)));
  for (int i = 0; i < n; ++i) U[i][i] = 1;
  auto swap_cols = [&](int a, int b) {
    for (auto& r : G) std::swap(r[a], r[b]);
    for (auto& r : U) std::swap(r[a], r[b]);
  };
  auto add_col = [&](int dst, int src, const Z& k) {
    for (auto& r : G) r[dst] += k * r[src];
    for (auto& r : U) r[dst] += k * r[src];
  };
  for (int p = 0; p < m; ++p) {
    for (;;) {
      int jmin = -1;
      for (int j = p; j < n; ++j)
        if (G[p][j] != 0 && (jmin < 0 || abs(G[p][j]) < abs(G[p][jmin]))) jmin = j;
      if (jmin < 0) return false;
      if (jmin != p) swap_cols(p, jmin);
      bool done = true;
      for (int j = p + 1; j < n; ++j)
        if (G[p][j] != 0) {
          add_col(j, p, -fdiv(G[p][j], G[p][p]));
          if (G[p][j] != 0) done = false;
        }
      if (done) break;
    }
    if (abs(G[p][p]) != 1) return false;
    if (G[p][p] < 0) {
      for (auto& r : G) r[p] = -r[p];
      for (auto& r : U) r[p] = -r[p];
    }
    for (int j = 0; j < n; ++j)
      if (j != p && G[p][j] != 0) add_col(j, p, -Z(G[p][j]));
  }
  return true;
}

class CellEnumerator {
 public:
  CellEnumerator(const WeylElement& w, const SignMatrix& vt, const IVec& c, int64_t q,
                 const EnumOptions& opt)
      : n_(w.n()), w_(w), q_(q), opt_(opt) {
    CVector cv = to_cvector(c);
    t_.resize(n_ + 1);
    for (int i = 1; i <= n_; ++i) t_[i] = Q(vt(i)) * c_at(cv, n_ - i + 1) / c_at(cv, n_ - i);
    free_.assign(n_ + 1, {});
    for (auto [a, b] : u_w_positions(w)) free_[a].push_back(b);
    D_.assign(n_ + 1, 1);
    for (int i = 1; i <= n_; ++i) {
      int64_t cert = to_i64(c_at(cv, n_ - i + 1).get_num());
      int64_t d = cert;
      if (opt.denom_bound) {
        d = std::gcd(*opt.denom_bound, cert);
        if (d < cert && !free_[w(i)].empty()) {
          std::ostringstream os;
          os << "denominator bound " << *opt.denom_bound << " is below the certified bound "
             << cert << " for row " << w(i) << " of x2; the sum may be incomplete";
          warnings_.push_back(os.str());
        }
      }
      D_[i] = d;
    }
  }

  long double tuple_count() const {
    long double total = 1;
    for (int i = 1; i <= n_; ++i) total *= std::pow((long double)D_[i], (long double)free_[w_(i)].size());
    return total;
  }

  CellEnumeration run() {
    CellEnumeration out;
    out.warnings = warnings_;
    if (!opt_.force && tuple_count() > (long double)opt_.budget) {
      std::ostringstream os;
      os << "enumeration needs " << tuple_count() << " candidate x2 tuples, budget is "
         << opt_.budget;
      throw BudgetExceeded(os.str());
    }
    // top level choices, distributed over threads, merged in choice order
    std::vector<std::vector<int64_t>> top = tuples(n_);
    std::vector<CellEnumeration> parts(top.size());
    const int T = std::max(1, std::min<int>(opt_.threads, static_cast<int>(top.size())));
    auto work = [&](int tid) {
      for (std::size_t k = tid; k < top.size(); k += T) {
        State s = fresh_state();
        parts[k].candidates = 0;
        if (place_row(s, n_, top[k], parts[k].candidates)) descend(s, n_ - 1, parts[k]);
      }
    };
    if (T == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int tid = 0; tid < T; ++tid) pool.emplace_back(work, tid);
      for (auto& th : pool) th.join();
    }
    for (auto& p : parts) {
      out.candidates += p.candidates;
      for (auto& r : p.cosets) out.cosets.push_back(std::move(r));
    }
    return out;
  }

 private:
  struct State {
    RationalMatrix x2;
    std::vector<std::vector<Z>> gamma;  // index 1..n
  };

  State fresh_state() const {
    State s;
    s.x2 = RationalMatrix::identity(n_);
    s.gamma.assign(n_ + 1, {});
    return s;
  }

  std::vector<std::vector<int64_t>> tuples(int i) const {
    const auto& cols = free_[w_(i)];
    std::vector<std::vector<int64_t>> out;
    std::vector<int64_t> cur(cols.size(), 0);
    for (;;) {
      out.push_back(cur);
      std::size_t k = 0;
      while (k < cur.size() && ++cur[k] == D_[i]) cur[k++] = 0;
      if (k == cur.size()) break;
    }
    return out;
  }

  // sets row w(i) of x2 and row i of gamma; false if no integral row exists
  bool place_row(State& s, int i, const std::vector<int64_t>& vals, uint64_t& cand) const {
    ++cand;
    const int r = w_(i);
    const auto& cols = free_[r];
    for (std::size_t k = 0; k < cols.size(); ++k)
      s.x2(r - 1, cols[k] - 1) = make_q(vals[k], D_[i]);
    std::vector<Q> row(n_);
    for (int j = 0; j < n_; ++j) row[j] = t_[i] * s.x2(r - 1, j);

    const int m = n_ - i;
    std::vector<std::vector<Z>> G;
    for (int k = i + 1; k <= n_; ++k) G.push_back(s.gamma[k]);
    std::vector<std::vector<Z>> U;
    if (!unimodular_completion(G, n_, U)) return false;
    std::vector<Q> ru(n_, Q(0));
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        if (row[k] != 0 && U[k][j] != 0) ru[j] += row[k] * Q(U[k][j]);
    for (int j = m; j < n_; ++j)
      if (!is_integral(ru[j])) return false;
    std::vector<Z> g(n_);
    for (int j = 0; j < n_; ++j) {
      Q x = row[j];
      for (int k = 0; k < m; ++k) x -= ru[k] * Q(G[k][j]);
      if (!is_integral(x)) throw std::logic_error("row solve produced a non-integral entry");
      g[j] = x.get_num();
    }
    if (i == n_) {
      Z qq = static_cast<long>(q_);
      for (int j = 0; j + 1 < n_; ++j) {
        Z rem;
        mpz_fdiv_r(rem.get_mpz_t(), g[j].get_mpz_t(), qq.get_mpz_t());
        if (rem != 0) return false;
      }
    }
    s.gamma[i] = std::move(g);
    return true;
  }

  void descend(State& s, int i, CellEnumeration& out) const {
    if (i == 0) {
      out.cosets.push_back(leaf(s));
      return;
    }
    const int r = w_(i);
    for (const auto& vals : tuples(i)) {
      if (place_row(s, i, vals, out.candidates)) descend(s, i - 1, out);
    }
    for (int b : free_[r]) s.x2(r - 1, b - 1) = 0;
  }

  CosetRecord leaf(const State& s) const {
    RationalMatrix gam(n_, n_), B(n_, n_);
    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j <= n_; ++j) {
        gam(i - 1, j - 1) = Q(s.gamma[i][j - 1]);
        B(i - 1, j - 1) = t_[i] * s.x2(w_(i) - 1, j - 1);
      }
    RationalMatrix x1 = gam * inverse(B);
    CosetRecord rec;
    for (int i = 0; i + 1 < n_; ++i) {
      rec.x1_super.push_back(x1(i, i + 1));
      rec.x2_super.push_back(s.x2(i, i + 1));
    }
    rec.gamma = std::move(gam);
    return rec;
  }

  int n_;
  WeylElement w_;
  int64_t q_;
  EnumOptions opt_;
  std::vector<Q> t_;
  std::vector<std::vector<int>> free_;
  std::vector<int64_t> D_;
  std::vector<std::string> warnings_;
};

using CellKey = std::tuple<std::vector<int>, std::vector<int>, IVec, int64_t, int64_t>;

inline std::mutex& cell_cache_mutex() {
  static std::mutex m;
  return m;
}
inline std::map<CellKey, std::shared_ptr<const CellEnumeration>>& cell_cache() {
  static std::map<CellKey, std::shared_ptr<const CellEnumeration>> c;
  return c;
}

}  // namespace detail

// double cosets U(Z) \ (cell of w with torus vt c^*) ∩ Γ0(q) / U_w(Z); memoised
inline std::shared_ptr<const CellEnumeration> enumerate_cell(const WeylElement& w,
                                                             const SignMatrix& vt,
                                                             const IVec& c, int64_t q,
                                                             const EnumOptions& opt = {}) {
  if (static_cast<int>(c.size()) != w.n() - 1) throw std::invalid_argument("c has wrong length");
  for (auto x : c)
    if (x < 1) throw std::invalid_argument("moduli must be positive");
  if (q < 1) throw std::invalid_argument("level must be positive");
  if (vt.det() * w.sign() != 1) return std::make_shared<const CellEnumeration>();
  detail::CellKey key{w.oneline(), vt.signs(), c, q, opt.denom_bound.value_or(0)};
  {
    std::lock_guard<std::mutex> lock(detail::cell_cache_mutex());
    auto it = detail::cell_cache().find(key);
    if (it != detail::cell_cache().end()) return it->second;
  }
  detail::CellEnumerator e(w, vt, c, q, opt);
  auto res = std::make_shared<const CellEnumeration>(e.run());
  std::lock_guard<std::mutex> lock(detail::cell_cache_mutex());
  detail::cell_cache().emplace(key, res);
  return res;
}

inline void clear_cell_cache() {
  std::lock_guard<std::mutex> lock(detail::cell_cache_mutex());
  detail::cell_cache().clear();
}

inline Q character_phase(const IVec& M, const IVec& N, const CosetRecord& r) {
  const int n = static_cast<int>(r.x1_super.size()) + 1;
  Q s = 0;
  for (int i = 1; i < n; ++i) {
    s += Q(static_cast<long>(M[n - i - 1])) * r.x1_super[i - 1];
    s += Q(static_cast<long>(N[n - i - 1])) * r.x2_super[i - 1];
  }
  return frac(s);
}

inline CyclotomicSum sum_characters(const CellEnumeration& cell, const IVec& M, const IVec& N) {
  std::vector<Q> ph;
  ph.reserve(cell.cosets.size());
  int64_t L = 1;
  for (const auto& r : cell.cosets) {
    ph.push_back(character_phase(M, N, r));
    L = std::lcm(L, to_i64(ph.back().get_den()));
  }
  CyclotomicSum s(L);
  for (const auto& p : ph) s.add_root(to_i64(p.get_num()) * (L / to_i64(p.get_den())));
  return s;
}

inline void validate(const KloostermanQuery& q) {
  const int n = q.n;
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (q.w.n() != n || q.v.n() != n) throw std::invalid_argument("w and v must have size n");
  if (static_cast<int>(q.M.size()) != n - 1 || static_cast<int>(q.N.size()) != n - 1 ||
      static_cast<int>(q.c.size()) != n - 1)
    throw std::invalid_argument("M, N, c must have n-1 entries");
  if (q.q < 1) throw std::invalid_argument("level must be positive");
  for (auto x : q.c)
    if (x < 1) throw std::invalid_argument("moduli must be positive");
}

// ignores the compatibility gate; the det gate is structural
inline KloostermanResult enumerate_sum_raw(const KloostermanQuery& q, const EnumOptions& opt = {}) {
  validate(q);
  auto cell = enumerate_cell(q.w, torus_sign(q.w, q.v), q.c, q.q, opt);
  KloostermanResult r;
  r.value = sum_characters(*cell, q.M, q.N);
  r.cosets = cell->cosets.size();
  r.candidates = cell->candidates;
  r.warnings = cell->warnings;
  return r;
}

inline KloostermanResult enumerate_sum(const KloostermanQuery& q, const EnumOptions& opt = {}) {
  validate(q);
  KloostermanResult r;
  auto gate = [&](const char* why) {
    r.value = CyclotomicSum::integer(0);
    r.gated = true;
    r.gate_reason = why;
    return r;
  };
  if (!block_form(q.w)) return gate("w has no block form");
  if (!divisibility_ok(q.w, q.q, to_cvector(q.c))) return gate("divisibility fails");
  if (!compatibility(q.w, q.v, q.M, q.N, to_cvector(q.c))) return gate("compatibility fails");
  if (q.v.det() != q.w.sign()) return gate("det(v) != det(w): empty cell");
  return enumerate_sum_raw(q, opt);
}

inline CyclotomicSum enumerate_sum_all_v(KloostermanQuery q, const EnumOptions& opt = {}) {
  CyclotomicSum s = CyclotomicSum::integer(0);
  for (const auto& v : all_signs(q.n)) {
    q.v = v;
    s += enumerate_sum(q, opt).value;
  }
  return s;
}

namespace detail {

inline void check_prime_level_args(int n, int64_t q, const IVec& M, const IVec& N) {
  if (!is_prime(q)) throw std::domain_error("level must be prime");
  if (static_cast<int>(M.size()) != n - 1 || static_cast<int>(N.size()) != n - 1)
    throw std::invalid_argument("M, N must have n-1 entries");
  for (auto x : M)
    if (std::gcd(x, q) != 1) throw std::domain_error("M entries must be coprime to q");
  for (auto x : N)
    if (std::gcd(x, q) != 1) throw std::domain_error("N entries must be coprime to q");
}

// nonzero only for block form with d_1 = d_r = 1, det(v) = det(w), compatible
inline bool prime_level_admissible(int n, int64_t q, const WeylElement& w, const IVec& M,
                                   const IVec& N, const SignMatrix& v) {
  auto d = block_form(w);
  if (!d || d->front() > 1 || d->back() > 1) return false;
  if (v.det() != w.sign()) return false;
  return compatibility(w, v, M, N, to_cvector(IVec(n - 1, q)));
}

}  // namespace detail

// explicit expression: x_1 unit, x_2..x_{n-1} free mod q
inline CyclotomicSum prime_level_sum(int n, int64_t q, const WeylElement& w, const IVec& M,
                                     const IVec& N, const SignMatrix& v) {
  detail::check_prime_level_args(n, q, M, N);
  if (n < 3) throw std::invalid_argument("prime_level_sum needs n >= 3");
  if (!detail::prime_level_admissible(n, q, w, M, N, v)) return CyclotomicSum::integer(0);
  const int64_t sgn = v(n) * v(n - 1);
  const int j = w.inverse()(n - 1);
  CyclotomicSum s(q);
  std::vector<int64_t> x(n, 0);  // x[1..n-1]
  for (x[1] = 1; x[1] < q; ++x[1]) {
    const int64_t xb = inv_mod(x[1], q);
    std::vector<int64_t> rest(n - 2, 0);
    for (;;) {
      for (int k = 2; k <= n - 1; ++k) x[k] = rest[k - 2];
      int64_t ph = M[0] * x[n - 1] + sgn * N[0] * x[j] % q * xb;
      s.add_root(mod_pos(ph, q));
      std::size_t k = 0;
      while (k < rest.size() && ++rest[k] == q) rest[k++] = 0;
      if (k == rest.size()) break;
    }
  }
  return s;
}

inline CyclotomicSum prime_level_sum(int n, int64_t q, const WeylElement& w, const IVec& M,
                                     const IVec& N) {
  return prime_level_sum(n, q, w, M, N, principal_sign(w));
}

// the 2(n-1) variables x_i, y_i mod q under the n-1 congruences, by brute force
inline CyclotomicSum prime_level_sum_congruences(int n, int64_t q, const WeylElement& w,
                                                 const IVec& M, const IVec& N,
                                                 const SignMatrix& v) {
  detail::check_prime_level_args(n, q, M, N);
  if (!detail::prime_level_admissible(n, q, w, M, N, v)) return CyclotomicSum::integer(0);
  SignMatrix vt = torus_sign(w, v);
  CyclotomicSum s(q);
  const int k = 2 * (n - 1);
  std::vector<int64_t> z(k, 0);  // x_1..x_{n-1}, y_1..y_{n-1}
  for (;;) {
    auto X = [&](int i) { return z[i - 1]; };
    auto Y = [&](int i) { return z[n - 1 + i - 1]; };
    bool ok = mod_pos(vt(1) + vt(n) * X(1) * Y(1), q) == 0;
    for (int i = 2; ok && i <= n - 1; ++i)
      ok = mod_pos(vt(i) * Y(w(i)) + vt(n) * X(i) * Y(1), q) == 0;
    if (ok) s.add_root(mod_pos(M[0] * X(n - 1) + N[0] * Y(n - 1), q));
    std::size_t p = 0;
    while (p < z.size() && ++z[p] == q) z[p++] = 0;
    if (p == z.size()) break;
  }
  return s;
}

inline int64_t thm3_closed_form(int n, int64_t q, const WeylElement& w, const IVec& M,
                                const IVec& N, const SignMatrix& v) {
  if (n < 3) throw std::invalid_argument("closed form needs n >= 3");
  detail::check_prime_level_args(n, q, M, N);
  if (!(w == WeylElement::w_star(n))) return 0;
  if (!detail::prime_level_admissible(n, q, w, M, N, v)) return 0;
  int64_t r = 1;
  for (int k = 0; k < n - 2; ++k) r *= q;
  return r;
}

inline int64_t thm3_closed_form(int n, int64_t q, const WeylElement& w, const IVec& M,
                                const IVec& N) {
  return thm3_closed_form(n, q, w, M, N, principal_sign(w));
}

// N'_{n-i} = N_{n-i} c_{n-w(i)} c_{n-w(i+1)+1} / (c_{n-w(i)+1} c_{n-w(i+1)}) mod q
inline IVec twisted_N(const WeylElement& w, const IVec& N, const IVec& c, int64_t q) {
  const int n = w.n();
  auto cc = [&](int k) -> int64_t { return (k <= 0 || k >= n) ? 1 : c[k - 1]; };
  IVec Np(n - 1);
  for (int i = 1; i <= n - 1; ++i) {
    int64_t num = mod_pos(cc(n - w(i)) * cc(n - w(i + 1) + 1), q);
    int64_t den = mod_pos(cc(n - w(i) + 1) * cc(n - w(i + 1)), q);
    Np[n - i - 1] = mod_pos(mod_pos(N[n - i - 1], q) * num % q * inv_mod(den, q), q);
  }
  return Np;
}

struct MultiplicativitySides {
  CyclotomicSum left, right, right_prime_part, right_coprime_part;
  IVec N_prime, N_coprime;
};

inline MultiplicativitySides multiplicativity_sides(int n, int64_t q, const WeylElement& w,
                                                    const IVec& M, const IVec& N, const IVec& c,
                                                    const SignMatrix& v,
                                                    const EnumOptions& opt = {}) {
  if (n < 3) throw std::invalid_argument("multiplicativity needs n >= 3");
  if (!is_prime(q)) throw std::domain_error("level must be prime");
  if (w(1) != n || w(n) != 1) throw std::domain_error("need w(1) = n and w(n) = 1");
  int64_t P = 1;
  for (auto x : c) P *= x;
  if (std::gcd(P, q) != 1) throw std::domain_error("moduli must be coprime to q");
  MultiplicativitySides out;
  IVec qc(c);
  for (auto& x : qc) x *= q;
  out.left = enumerate_sum({n, q, w, M, N, qc, v}, opt).value;
  out.N_prime = twisted_N(w, N, c, q);
  out.right_prime_part = enumerate_sum({n, q, w, M, out.N_prime, IVec(n - 1, q), v}, opt).value;
  const int64_t qb = P > 1 ? inv_mod(q, P) : 0;
  out.N_coprime = N;
  out.N_coprime[0] = qb * N[0];
  out.N_coprime[n - 2] = qb * N[n - 2];
  out.right_coprime_part = enumerate_sum({n, 1, w, M, out.N_coprime, c, v}, opt).value;
  out.right = out.right_prime_part * out.right_coprime_part;
  return out;
}

inline bool trivial_bound_ok(const CyclotomicSum& s, const IVec& c) {
  long double P = 1;
  for (auto x : c) P *= x;
  return std::abs(s.value()) <= P + 1e-9L;
}

// sum over a d = 1 mod c of e((m a + nn d)/c)
inline CyclotomicSum classical_gl2(int64_t m, int64_t nn, int64_t c) {
  if (c < 1) throw std::invalid_argument("c must be positive");
  CyclotomicSum s(c);
  for (int64_t a = 0; a < c; ++a) {
    if (std::gcd(a, c) != 1) continue;
    int64_t d = inv_mod(a, c);
    s.add_root(mod_pos(m % c * a + nn % c * d, c));
  }
  return s;
}

struct HeuristicMass {
  double value = 0;
  std::optional<Q> exact;
  uint64_t cells = 0;
};

// sum over block-form w != id and q | c_j <= X of |S_{q,w}(M, M, c)| / (c_1 ... c_{n-1})
inline HeuristicMass heuristic_mass(int n, int64_t q, int64_t X, const IVec& M,
                                    const EnumOptions& opt = {}) {
  if (!is_prime(q)) throw std::domain_error("level must be prime");
  HeuristicMass h;
  h.exact = Q(0);
  if (X < q) return h;
  const int64_t K = X / q;
  for (const auto& w : block_form_elements(n)) {
    if (w.is_identity()) continue;
    IVec idx(n - 1, 1);
    for (;;) {
      IVec c(n - 1);
      int64_t P = 1;
      for (int j = 0; j < n - 1; ++j) {
        c[j] = idx[j] * q;
        P *= c[j];
      }
      auto r = enumerate_sum({n, q, w, M, M, c, principal_sign(w)}, opt);
      if (!r.gated) ++h.cells;
      if (!r.value.is_zero()) {
        h.value += static_cast<double>(std::abs(r.value.value())) / static_cast<double>(P);
        if (h.exact && r.value.is_integer())
          *h.exact += make_q(std::abs(r.value.integer_value()), P);
        else
          h.exact.reset();
      }
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] > K) idx[k++] = 1;
      if (k == idx.size()) break;
    }
  }
  return h;
}

}  // namespace gln
