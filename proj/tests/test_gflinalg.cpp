#include <doctest.h>

#include <random>
#include <set>

#include "twistlab/errors.hpp"
#include "twistlab/gflinalg.hpp"
#include "twistlab/quadform.hpp"

using namespace twistlab;
using namespace twistlab::gflinalg;

namespace {

FpMatrix f2_from_rows(const std::vector<std::vector<int>>& rows) {
  FpMatrix m(2, (int)rows.size(), (int)rows[0].size());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) m.set(r, c, rows[r][c]);
  return m;
}

// Independent rank oracle over F2: size of the row span, enumerated.
int rank_by_span(const std::vector<std::vector<int>>& rows) {
  std::size_t n = rows.size();
  std::set<std::vector<int>> span;
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    std::vector<int> v(rows[0].size(), 0);
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1)
        for (std::size_t j = 0; j < v.size(); ++j) v[j] ^= rows[i][j];
    span.insert(v);
  }
  int r = 0;
  while ((std::size_t(1) << r) < span.size()) ++r;
  return r;
}

FpMatrix random_matrix(int p, int n, std::mt19937_64& rng) {
  FpMatrix m(p, n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m.set(r, c, (int)(rng() % p));
  return m;
}

FpMatrix random_invertible(int p, int n, std::mt19937_64& rng) {
  while (true) {
    FpMatrix m = random_matrix(p, n, rng);
    if (m.inverse()) return m;
  }
}

}  // namespace

TEST_SUITE("gflinalg") {
  TEST_CASE("rank: identity and zero") {
    CHECK(rank(FpMatrix::identity(2, 3)) == 3);
    CHECK(rank(FpMatrix(2, 2, 4)) == 0);
    CHECK(rank(BitMatrix::identity(3)) == 3);
    CHECK(rank(BitMatrix(2, 4)) == 0);
  }

  TEST_CASE("rank: span oracle") {
    std::vector<std::vector<int>> rows{{1, 1, 0, 0}, {0, 1, 1, 0}, {1, 0, 1, 0}};
    CHECK(rank_by_span(rows) == 2);
    CHECK(rank(f2_from_rows(rows)) == rank_by_span(rows));
  }

  TEST_CASE("rank equals rank of transpose") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      int p = (trial % 2) ? 2 : 5;
      FpMatrix m = random_matrix(p, 2 + (int)(rng() % 5), rng);
      CHECK(rank(m) == rank(m.transposed()));
    }
  }

  TEST_CASE("fixed_subspace_dim examples") {
    CHECK(fixed_subspace_dim(FpMatrix::identity(2, 4)) == 4);

    // symplectic transvection v -> v + <v,w>w on F2^4
    auto s = quadform::standard_space(4);
    BitVec w = 0b0110;
    BitMatrix t(4, 4);
    for (int j = 0; j < 4; ++j)
      t.set_column(j, (BitVec(1) << j) ^ (s.pair(BitVec(1) << j, w) ? w : 0));
    int fixed_count = 0;
    for (BitVec v = 0; v < 16; ++v)
      if (t.apply(v) == v) ++fixed_count;
    CHECK(fixed_count == 8);  // oracle: enumerate all 16 vectors
    CHECK(fixed_space_dim(t) == 3);

    // 6-cycle permutation on F2^6
    std::vector<int> cyc{1, 2, 3, 4, 5, 0};
    FpMatrix perm = permutation_matrix(cyc, 2);
    int fixed6 = 0;
    BitMatrix bperm = to_bitmatrix(perm);
    for (BitVec v = 0; v < 64; ++v)
      if (bperm.apply(v) == v) ++fixed6;
    CHECK(fixed6 == 2);  // oracle: all 64 vectors
    CHECK(fixed_subspace_dim(perm) == 1);
  }

  TEST_CASE("fixed dim invariant under conjugation") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
      int p = (trial % 2) ? 2 : 3;
      int n = 3;
      FpMatrix m = random_matrix(p, n, rng);
      FpMatrix g = random_invertible(p, n, rng);
      CHECK(fixed_subspace_dim(m) == fixed_subspace_dim(g * m * *g.inverse()));
    }
  }

  TEST_CASE("solve examples") {
    FpVector b(2, 2);
    b.e = {0, 1};
    auto sol_id = solve(FpMatrix::identity(2, 2), b);
    REQUIRE(sol_id.has_value());
    CHECK(*sol_id == b);

    CHECK_FALSE(solve(FpMatrix(2, 2, 2), b).has_value());

    FpMatrix a = f2_from_rows({{1, 1}, {0, 1}});
    auto sol = solve(a, b);
    REQUIRE(sol.has_value());
    CHECK(a.apply(*sol) == b);  // verified by multiplication
    CHECK(sol->e == std::vector<std::uint8_t>{1, 1});
  }

  TEST_CASE("solve over odd primes") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
      FpMatrix a = random_matrix(5, 4, rng);
      FpVector x(5, 4);
      for (auto& e : x.e) e = (std::uint8_t)(rng() % 5);
      FpVector b = a.apply(x);
      auto sol = solve(a, b);
      REQUIRE(sol.has_value());
      CHECK(a.apply(*sol) == b);
    }
  }

  TEST_CASE("closure: Sp2 has 6 elements, Sp4 has 720") {
    auto sp2 = quadform::symplectic_group(quadform::standard_space(2));
    CHECK(sp2.order() == 6);
    auto sp4 = quadform::symplectic_group(quadform::standard_space(4));
    CHECK(sp4.order() == 720);
  }

  TEST_CASE("closure: empty generator list is the trivial group") {
    MatrixGroup g(2, 3, {});
    CHECK(g.order() == 1);
    CHECK(g.element(0) == FpMatrix::identity(2, 3));
  }

  TEST_CASE("closure is closed and respects Lagrange") {
    auto sp2 = quadform::symplectic_group(quadform::standard_space(2));
    for (std::size_t i = 0; i < sp2.order(); ++i)
      for (std::size_t j = 0; j < sp2.order(); ++j)
        CHECK(sp2.contains(sp2.element(i) * sp2.element(j)));

    auto sp4 = quadform::symplectic_group(quadform::standard_space(4));
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 8; ++trial) {
      std::size_t pick = rng() % sp4.order();
      MatrixGroup sub(2, 4, {sp4.element(pick)});
      CHECK(sp4.order() % sub.order() == 0);
    }
  }

  TEST_CASE("closure cap raises a size-limit error") {
    auto s = quadform::standard_space(4);
    CHECK_THROWS_AS(quadform::symplectic_group(s, 100), SizeLimitError);
  }

  TEST_CASE("deterministic element order") {
    auto a = quadform::symplectic_group(quadform::standard_space(4));
    auto b = quadform::symplectic_group(quadform::standard_space(4));
    for (std::size_t i = 0; i < a.order(); ++i) CHECK(a.element(i) == b.element(i));
  }

  TEST_CASE("mult and inverse tables") {
    auto sp2 = quadform::symplectic_group(quadform::standard_space(2));
    BitGroupTable t = BitGroupTable::build(sp2);
    for (std::size_t i = 0; i < t.order(); ++i) {
      CHECK(t.elems[t.inv[i]] * t.elems[i] == BitMatrix::identity(2));
      for (std::size_t j = 0; j < t.order(); ++j)
        CHECK(t.elems[t.mul(i, j)] == t.elems[i] * t.elems[j]);
    }
  }

  TEST_CASE("two-torsion quotient of S3 and its characters") {
    auto sp2 = quadform::symplectic_group(quadform::standard_space(2));  // S3
    TwoTorsionQuotient q = two_torsion_quotient(sp2);
    CHECK(q.rank == 1);
    auto chars = f2_characters(sp2);
    REQUIRE(chars.size() == 2);
    // the nontrivial one is a homomorphism
    for (std::size_t i = 0; i < sp2.order(); ++i)
      for (std::size_t j = 0; j < sp2.order(); ++j)
        CHECK(chars[1][sp2.mul(i, j)] == (chars[1][i] ^ chars[1][j]));
  }

  TEST_CASE("bitmatrix inverse and conversions") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
      FpMatrix m = random_invertible(2, 5, rng);
      BitMatrix b = to_bitmatrix(m);
      auto binv = b.inverse();
      REQUIRE(binv.has_value());
      CHECK((*binv) * b == BitMatrix::identity(5));
      CHECK(from_bitmatrix(b) == m);
    }
  }
}
