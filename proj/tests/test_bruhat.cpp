#include "support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace gln;

namespace {

RationalMatrix mat2(long a, long b, long c, long d) {
  RationalMatrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

std::string key(const BruhatData& b) {
  std::ostringstream os;
  os << b.x1 << b.v.str() << "|";
  for (const auto& x : b.c) os << x << ",";
  os << b.w.str() << b.x2;
  return os.str();
}

}  // namespace

TEST(Decompose, Identity) {
  auto b = decompose(RationalMatrix::identity(4));
  EXPECT_EQ(b.x1, RationalMatrix::identity(4));
  EXPECT_EQ(b.v, SignMatrix::ones(4));
  EXPECT_EQ(b.c, CVector(3, Q(1)));
  EXPECT_TRUE(b.w.is_identity());
  EXPECT_EQ(b.x2, RationalMatrix::identity(4));
}

TEST(Decompose, RotationN2) {
  auto b = decompose(mat2(0, -1, 1, 0));
  EXPECT_EQ(b.x1, RationalMatrix::identity(2));
  EXPECT_EQ(b.v.signs(), std::vector<int>({-1, 1}));
  EXPECT_EQ(b.c, CVector({Q(1)}));
  EXPECT_EQ(b.w.oneline(), std::vector<int>({2, 1}));
  EXPECT_EQ(b.x2, RationalMatrix::identity(2));
}

TEST(Decompose, ClassicalCell) {
  for (long q : {2L, 3L, 7L, 12L}) {
    auto b = decompose(mat2(1, 0, q, 1));
    EXPECT_EQ(b.x1(0, 1), make_q(1, q));
    EXPECT_EQ(b.x2(0, 1), make_q(1, q));
    EXPECT_EQ(b.c, CVector({Q(q)}));
    EXPECT_EQ(b.v.signs(), std::vector<int>({-1, 1}));
    EXPECT_EQ(b.v.matrix() * cstar(b.c), RationalMatrix::diagonal({make_q(-1, q), Q(q)}));
    EXPECT_EQ(recompose(b), mat2(1, 0, q, 1));
  }
}

TEST(Decompose, Errors) {
  EXPECT_THROW(decompose(mat2(1, 2, 2, 4)), std::domain_error);
  EXPECT_THROW(decompose(mat2(2, 0, 0, 1)), std::domain_error);
}

TEST(Recompose, IdentityAndHandBuilt) {
  BruhatData id{RationalMatrix::identity(3), SignMatrix::ones(3), CVector(2, Q(1)),
                WeylElement::identity(3), RationalMatrix::identity(3)};
  EXPECT_EQ(recompose(id), RationalMatrix::identity(3));
  BruhatData b{RationalMatrix::identity(3), SignMatrix({1, -1, -1}), CVector(2, Q(1)),
               WeylElement::long_element(3), RationalMatrix::identity(3)};
  RationalMatrix want(3, 3);
  want(0, 2) = 1;
  want(1, 1) = -1;
  want(2, 0) = -1;
  EXPECT_EQ(recompose(b), want);
}

TEST(Bruhat, RoundTripRandom) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 2000; ++t) {
    int n = 2 + t % 4;
    auto g = to_rational(sample::random_sl(n, rng));
    auto b = decompose(g);
    EXPECT_TRUE(is_unipotent_upper(b.x1));
    EXPECT_TRUE(is_unipotent_upper(b.x2));
    auto pos = u_w_positions(b.w);
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        if (!std::binary_search(pos.begin(), pos.end(), Position{i, j})) EXPECT_EQ(b.x2(i - 1, j - 1), 0);
    for (const auto& x : b.c) EXPECT_GT(x, 0);
    EXPECT_EQ(b.v.det() * b.w.sign(), 1);
    EXPECT_EQ(recompose(b), g);
    auto c = canonicalize(b);
    EXPECT_EQ(canonicalize(c), c);
    EXPECT_EQ(decompose(recompose(c)), c);
    EXPECT_EQ(c.w, b.w);
    EXPECT_EQ(c.c, b.c);
    EXPECT_EQ(c.v, b.v);
  }
}

TEST(Canonicalize, Range) {
  BruhatData b{RationalMatrix::identity(2), SignMatrix({-1, 1}), CVector({Q(5)}),
               WeylElement({2, 1}), RationalMatrix::identity(2)};
  b.x1(0, 1) = make_q(7, 5);
  b.x2(0, 1) = make_q(-3, 5);
  auto c = canonicalize(b);
  EXPECT_EQ(c.x1(0, 1), make_q(2, 5));
  EXPECT_EQ(c.x2(0, 1), make_q(2, 5));
  b.x1(0, 1) = 4;
  EXPECT_EQ(canonicalize(b).x1, RationalMatrix::identity(2));
}

TEST(Canonicalize, EntriesInUnitInterval) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 500; ++t) {
    int n = 2 + t % 4;
    auto c = canonicalize(decompose(to_rational(sample::random_sl(n, rng))));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        EXPECT_GE(c.x1(i, j), 0);
        EXPECT_LT(c.x1(i, j), 1);
        EXPECT_GE(c.x2(i, j), 0);
        EXPECT_LT(c.x2(i, j), 1);
      }
  }
}

TEST(Canonicalize, DoubleCosetInvariance) {
  // u g u' with u in U(Z) and u' in U_w(Z) has the same canonical form
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<int> U(-4, 4);
  for (int t = 0; t < 300; ++t) {
    int n = 2 + t % 4;
    auto g = to_rational(sample::random_sl(n, rng));
    auto b = decompose(g);
    RationalMatrix u = RationalMatrix::identity(n), u2 = RationalMatrix::identity(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) u(i, j) = U(rng);
    for (auto [a, c] : u_w_positions(b.w)) u2(a - 1, c - 1) = U(rng);
    auto b2 = decompose(u * g * u2);
    EXPECT_EQ(canonicalize(b2), canonicalize(b));
  }
}

TEST(Canonicalize, DistinctCosetsDistinctForms) {
  std::mt19937_64 rng(53);
  std::set<std::string> keys;
  std::set<std::string> mats;
  for (int t = 0; t < 400; ++t) {
    auto c = canonicalize(decompose(to_rational(sample::random_sl(3, rng))));
    auto g = recompose(c);
    std::ostringstream os;
    os << g;
    bool fresh_key = keys.insert(key(c)).second;
    bool fresh_mat = mats.insert(os.str()).second;
    EXPECT_EQ(fresh_key, fresh_mat);
  }
}

TEST(Gamma0, Examples) {
  EXPECT_TRUE(is_in_gamma0(RationalMatrix::identity(3), 7));
  EXPECT_TRUE(is_in_gamma0(mat2(1, 0, 5, 1), 5));
  EXPECT_FALSE(is_in_gamma0(mat2(1, 0, 1, 1), 5));
  EXPECT_FALSE(is_in_gamma0(mat2(0, -1, 1, 0), 2));
  EXPECT_FALSE(is_in_gamma0(mat2(0, 1, 1, 0), 1));
  RationalMatrix half = RationalMatrix::identity(2);
  half(0, 1) = make_q(1, 2);
  EXPECT_FALSE(is_in_gamma0(half, 1));
}

TEST(Gamma0, CellsSatisfyDivisibility) {
  std::mt19937_64 rng(59);
  int seen = 0;
  for (long q : {2L, 3L, 5L})
    for (int t = 0; t < 150; ++t) {
      int n = 2 + t % 3;
      auto g = to_rational(sample::random_gamma0(n, q, rng));
      ASSERT_TRUE(is_in_gamma0(g, q));
      auto b = decompose(g);
      if (!block_form(b.w)) continue;
      ++seen;
      EXPECT_TRUE(divisibility_ok(b.w, q, b.c)) << b.w.str();
    }
  EXPECT_GT(seen, 50);
}
