#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "twistcat/graded.hpp"

using namespace twistcat;

TEST_CASE("field axioms hold for randomized scalars") {
  std::mt19937 rng(7);
  for (long p : {0L, 2L, 3L, 5L}) {
    FieldSpec f(p);
    auto rnd = [&]() {
      long n = (long)(rng() % 19) - 9;
      long d = (long)(rng() % 7) + 1;
      return f.is_rational() ? Scalar::from_fraction(n, d, f) : Scalar::from_int(n, f);
    };
    for (int it = 0; it < 200; ++it) {
      Scalar a = rnd(), b = rnd(), c = rnd();
      CHECK(a + b == b + a);
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + Scalar::zero(f) == a);
      CHECK(a * Scalar::one(f) == a);
      CHECK(a - a == Scalar::zero(f));
      if (!a.is_zero()) CHECK(a * a.inverse() == Scalar::one(f));
    }
  }
}

TEST_CASE("characteristic must be 0 or prime") {
  CHECK_THROWS_AS(FieldSpec(4), FieldError);
  CHECK_THROWS_AS(FieldSpec(6), FieldError);
  CHECK_NOTHROW(FieldSpec(7));
}

static Matrix from_rows(const std::vector<std::vector<long>>& rows, const FieldSpec& f) {
  Matrix m((int)rows.size(), rows.empty() ? 0 : (int)rows[0].size());
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.add(i, j, Scalar::from_int(rows[i][j], f));
  m.canonicalize();
  return m;
}

TEST_CASE("rank examples") {
  FieldSpec q(0), f2(2);
  CHECK(matrix_rank(from_rows({{1, 2}, {2, 4}}, q), q) == 1);
  CHECK(matrix_rank(from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, f2), f2) == 3);
  CHECK(matrix_rank(from_rows({{1, 1}, {1, 1}}, f2), f2) == 1);
  CHECK(matrix_rank(from_rows({{1, 1}, {1, 1}}, q), q) == 1);
}

TEST_CASE("kernel examples") {
  FieldSpec q(0), f2(2);
  CHECK(kernel_basis(from_rows({{0, 0}, {0, 0}}, q), q).size() == 2);
  CHECK(kernel_basis(from_rows({{1, 0}, {0, 1}}, q), q).empty());
  auto k = kernel_basis(from_rows({{1, 1}}, f2), f2);
  REQUIRE(k.size() == 1);
  CHECK(k[0].size() == 2);  // (1, 1)
}

TEST_CASE("characteristic mismatch is a malformed-input error") {
  FieldSpec q(0), f2(2);
  Matrix m(1, 1);
  m.add(0, 0, Scalar::one(q));
  CHECK_THROWS_AS(matrix_rank(m, f2), FieldError);
}

TEST_CASE("rank + kernel size = cols, parallel matches serial reference") {
  std::mt19937 rng(11);
  for (long p : {0L, 2L, 5L}) {
    FieldSpec f(p);
    for (int it = 0; it < 30; ++it) {
      int r = 1 + (int)(rng() % 14), c = 1 + (int)(rng() % 14);
      Matrix m(r, c);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
          if (rng() % 3 == 0) m.add(i, j, Scalar::from_int((long)(rng() % 7) - 3, f));
      m.canonicalize();
      long rk = matrix_rank(m, f);
      CHECK(rk == matrix_rank_serial(m, f));
      auto kb = kernel_basis(m, f);
      CHECK(rk + (long)kb.size() == c);
      CHECK(kb.size() == kernel_basis_serial(m, f).size());
      for (auto& v : kb) CHECK(apply(m, v, f).empty());
    }
  }
}

TEST_CASE("solve finds particular solutions") {
  FieldSpec q(0);
  Matrix m = from_rows({{1, 2}, {3, 4}}, q);
  SparseVec b = {{0, Scalar::from_int(5, q)}, {1, Scalar::from_int(11, q)}};
  auto x = solve(m, b, q);
  REQUIRE(x.has_value());
  auto y = apply(m, *x, q);
  CHECK(y == b);
  // inconsistent system
  Matrix z = from_rows({{1, 1}, {1, 1}}, q);
  SparseVec b2 = {{0, Scalar::one(q)}};
  CHECK_FALSE(solve(z, b2, q).has_value());
}

TEST_CASE("cohomology of small complexes") {
  FieldSpec q(0);
  // 0 -> K -> K -> 0 with identity differential: acyclic
  GradedSpace s;
  s.add("a", 0);
  s.add("b", 1);
  std::vector<SparseVec> d(2);
  d[0] = {{1, Scalar::one(q)}};
  CochainComplex c(std::move(s), q, std::move(d));
  CHECK(is_acyclic(c));

  // d^2 != 0 rejected with the offending label
  GradedSpace s2;
  s2.add("a", 0);
  s2.add("b", 1);
  s2.add("c", 2);
  std::vector<SparseVec> d2(3);
  d2[0] = {{1, Scalar::one(q)}};
  d2[1] = {{2, Scalar::one(q)}};
  CHECK_THROWS_WITH_AS(CochainComplex(std::move(s2), q, std::move(d2)),
                       doctest::Contains("d^2 != 0 at basis label a"), ComplexError);
}

TEST_CASE("cohomology independent of basis order") {
  FieldSpec f3(3);
  std::mt19937 rng(3);
  // random 2-step complex: build d with d^2=0 by construction (d then zero)
  GradedSpace s;
  for (int i = 0; i < 5; ++i) s.add("u" + std::to_string(i), 0);
  for (int i = 0; i < 4; ++i) s.add("v" + std::to_string(i), 1);
  std::vector<SparseVec> d(9);
  for (int i = 0; i < 5; ++i) {
    SparseVec col;
    for (int j = 0; j < 4; ++j)
      if (rng() % 2) col.push_back({5 + j, Scalar::from_int((long)(rng() % 3), f3)});
    d[i] = col;
  }
  CochainComplex c1(s, f3, d);
  auto h1 = cohomology(c1);
  // permuted copy
  GradedSpace sp;
  std::vector<int> perm = {3, 1, 4, 0, 2, 7, 5, 8, 6};
  std::vector<int> inv(9);
  for (int i = 0; i < 9; ++i) inv[perm[i]] = i;
  for (int i = 0; i < 9; ++i) sp.add(s.label(perm[i]), s.degree(perm[i]));
  std::vector<SparseVec> dp(9);
  for (int i = 0; i < 9; ++i) {
    for (auto& [j, v] : d[perm[i]]) dp[i].push_back({inv[j], v});
    std::sort(dp[i].begin(), dp[i].end(), [](auto& a, auto& b) { return a.first < b.first; });
  }
  CochainComplex c2(std::move(sp), f3, std::move(dp));
  CHECK(cohomology(c2).ranks == h1.ranks);
}
