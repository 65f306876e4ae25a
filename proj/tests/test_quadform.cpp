#include <doctest.h>

#include <random>
#include <set>

#include "twistlab/errors.hpp"
#include "twistlab/quadform.hpp"

using namespace twistlab;
using namespace twistlab::quadform;
using gflinalg::BitMatrix;
using gflinalg::BitVec;

namespace {

// Transvection t_w on a space (in O(q) exactly when q(w) = 1).
BitMatrix transvection(const SymplecticSpace& s, BitVec w) {
  BitMatrix t(s.dim, s.dim);
  for (int j = 0; j < s.dim; ++j)
    t.set_column(j, (BitVec(1) << j) ^ (s.pair(BitVec(1) << j, w) ? w : 0));
  return t;
}

}  // namespace

TEST_SUITE("quadform") {
  TEST_CASE("eval examples") {
    auto s = standard_space(2);
    QuadraticRefinement zero{s, 0};
    CHECK(eval(zero, 0b11) == 1);  // forced by <e,f> = 1
    CHECK(eval(zero, 0) == 0);

    QuadraticRefinement qu{s, 0b11};  // q(x) = q(y) = 1
    CHECK(eval(qu, 0b11) == 1);       // lambda + lambda' + lambda lambda' at (1,1)
  }

  TEST_CASE("polar identity, exhaustive dims 2..8") {
    for (int dim : {2, 4, 6, 8}) {
      auto stats = polar_identity_sweep(standard_space(dim));
      CHECK(stats.cases == (1LL << (3 * dim)));
      CHECK(stats.failures == 0);
    }
  }

  TEST_CASE("symplectic basis") {
    auto s = standard_space(2);
    auto b = symplectic_basis(s);
    REQUIRE(b.pairs.size() == 1);
    CHECK(s.pair(b.pairs[0].first, b.pairs[0].second) == 1);

    // dim-4 permuted gram: pairs (0,2) and (1,3)
    BitMatrix g(4, 4);
    g.set(0, 2, true);
    g.set(2, 0, true);
    g.set(1, 3, true);
    g.set(3, 1, true);
    SymplecticSpace sp(4, g);
    auto b4 = symplectic_basis(sp);
    REQUIRE(b4.pairs.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(sp.pair(b4.pairs[i].first, b4.pairs[i].second) == 1);
      for (std::size_t j = 0; j < 2; ++j) {
        if (i == j) continue;
        CHECK(sp.pair(b4.pairs[i].first, b4.pairs[j].first) == 0);
        CHECK(sp.pair(b4.pairs[i].first, b4.pairs[j].second) == 0);
        CHECK(sp.pair(b4.pairs[i].second, b4.pairs[j].second) == 0);
      }
    }
  }

  TEST_CASE("arf examples") {
    auto s = standard_space(2);
    CHECK(arf({s, 0}) == 0);
    CHECK(arf({s, 0b11}) == 1);

    auto s4 = standard_space(4);
    int zeros = 0;
    for (const auto& q : all_refinements(s4))
      if (arf(q) == 0) ++zeros;
    CHECK(zeros == 10);  // brute force over all 16 refinements
  }

  TEST_CASE("arf independent of basis choice") {
    // Evaluate arf through a second route: count zeros of q. A refinement
    // has Arf 0 iff q vanishes on strictly more than half... use the count
    // of zeros: Arf 0 gives 2^(dim-1) + 2^(g-1) zeros.
    for (int dim : {2, 4, 6}) {
      auto s = standard_space(dim);
      int g = dim / 2;
      long long arf0_zeros = (1LL << (dim - 1)) + (1LL << (g - 1));
      for (const auto& q : all_refinements(s)) {
        long long zeros = 0;
        for (BitVec v = 0; v < (BitVec(1) << dim); ++v)
          if (eval(q, v) == 0) ++zeros;
        int arf_by_count = (zeros == arf0_zeros) ? 0 : 1;
        CHECK(arf(q) == arf_by_count);
      }
    }
  }

  TEST_CASE("translate examples") {
    auto s = standard_space(2);
    QuadraticRefinement q{s, 0};
    CHECK(translate(q, 0).basis_vals == q.basis_vals);

    // v = e: new values (q(e), q(f)) = (0, 1)
    auto moved = translate(q, 0b01);
    CHECK(eval(moved, 0b01) == 0);
    CHECK(eval(moved, 0b10) == 1);
    CHECK(moved.basis_vals == 0b10);

    // involution
    for (int dim : {2, 4}) {
      auto sp = standard_space(dim);
      for (const auto& qq : all_refinements(sp))
        for (BitVec v = 0; v < (BitVec(1) << dim); ++v)
          CHECK(translate(translate(qq, v), v).basis_vals == qq.basis_vals);
    }
  }

  TEST_CASE("translate orbit is the full torsor") {
    for (int dim : {2, 4}) {
      auto s = standard_space(dim);
      QuadraticRefinement q{s, BitVec(1)};
      std::set<BitVec> orbit;
      for (BitVec v = 0; v < (BitVec(1) << dim); ++v) orbit.insert(translate(q, v).basis_vals);
      CHECK(orbit.size() == (std::size_t(1) << dim));
    }
  }

  TEST_CASE("arf-translate covariance, dims <= 6") {
    for (int dim : {2, 4, 6}) {
      auto stats = arf_translation_sweep(standard_space(dim));
      CHECK(stats.failures == 0);
      CHECK(stats.cases == (1LL << (2 * dim)));
    }
  }

  TEST_CASE("cocycle basics") {
    auto s = standard_space(4);
    QuadraticRefinement q{s, 0b0011};
    CHECK(cocycle(q, BitMatrix::identity(4)) == 0);

    // sigma in O(q) -> 0
    BitVec w = 0;
    for (BitVec cand = 1; cand < 16; ++cand)
      if (eval(q, cand) == 1) {
        w = cand;
        break;
      }
    BitMatrix t = transvection(s, w);
    REQUIRE(preserves(q, t));
    CHECK(cocycle(q, t) == 0);

    CHECK_THROWS_AS(cocycle(q, BitMatrix(4, 4)), InputError);
  }

  TEST_CASE("cocycle defining property and cocycle relation") {
    auto s = standard_space(4);
    auto sp = symplectic_group(s);
    auto table = gflinalg::BitGroupTable::build(sp);
    QuadraticRefinement q{s, 0b0110};

    std::vector<BitVec> c(table.order());
    for (std::size_t i = 0; i < table.order(); ++i) {
      c[i] = cocycle(q, table.elems[i]);
      // q(sigma^-1 u) - q(u) = <u, c> for all u
      BitMatrix si = table.elems[table.inv[i]];
      for (BitVec u = 0; u < 16; ++u)
        CHECK((eval(q, si.apply(u)) ^ eval(q, u)) == s.pair(u, c[i]));
    }
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 500; ++trial) {
      std::size_t i = rng() % table.order(), j = rng() % table.order();
      CHECK(c[table.mul(i, j)] == (c[i] ^ table.elems[i].apply(c[j])));
    }
  }

  TEST_CASE("translated cocycle: c_{q+v} = c_q + dv, dim 4 exhaustive") {
    auto s = standard_space(4);
    auto sp = symplectic_group(s);
    auto table = gflinalg::BitGroupTable::build(sp);
    QuadraticRefinement q{s, 0b0101};
    for (BitVec v = 0; v < 16; ++v) {
      auto qv = translate(q, v);
      for (const auto& m : table.elems) {
        BitVec dv = m.apply(v) ^ v;
        CHECK(cocycle(qv, m) == (cocycle(q, m) ^ dv));
      }
    }
  }

  TEST_CASE("dickson examples") {
    auto s = standard_space(4);
    QuadraticRefinement q{s, 0b0011};
    CHECK(dickson(q, BitMatrix::identity(4)) == 0);

    std::vector<BitMatrix> odd_transvections;
    for (BitVec w = 1; w < 16; ++w)
      if (eval(q, w) == 1) odd_transvections.push_back(transvection(s, w));
    REQUIRE(odd_transvections.size() >= 2);
    for (const auto& t : odd_transvections) CHECK(dickson(q, t) == 1);

    // product of two such transvections has even fixed dimension
    const auto& a = odd_transvections[0];
    const auto& b = odd_transvections[1];
    CHECK(dickson(q, a * b) == 0);
    CHECK(gflinalg::fixed_space_dim(a * b) % 2 == 0);

    // non-member rejected
    BitVec w0 = 0;
    for (BitVec cand = 1; cand < 16; ++cand)
      if (eval(q, cand) == 0) {
        w0 = cand;
        break;
      }
    CHECK_THROWS_AS(dickson(q, transvection(s, w0)), InputError);
  }

  TEST_CASE("orthogonal group orders at dim 2") {
    auto s = standard_space(2);
    auto sp = symplectic_group(s);
    for (const auto& q : all_refinements(s)) {
      auto oq = orthogonal_group(q, sp);
      // stabilizer oracle: compare q o sigma^-1 with q on basis values
      std::size_t stab = 0;
      for (const auto& m : sp.elements()) {
        BitMatrix inv = *gflinalg::to_bitmatrix(m).inverse();
        BitVec moved = 0;
        for (int i = 0; i < 2; ++i)
          if (eval(q, inv.apply(BitVec(1) << i))) moved |= BitVec(1) << i;
        if (moved == q.basis_vals) ++stab;
      }
      CHECK(oq.order() == stab);
      CHECK(oq.order() == (arf(q) == 1 ? 6 : 2));
      CHECK(oq.contains(gflinalg::FpMatrix::identity(2, 2)));
    }
  }

  TEST_CASE("orbit-stabilizer at dim 4") {
    auto s = standard_space(4);
    auto sp = symplectic_group(s);
    for (const auto& q : all_refinements(s)) {
      auto oq = orthogonal_group(q, sp);
      CHECK(oq.order() == (arf(q) == 0 ? 72 : 120));
    }
  }

  TEST_CASE("no Sp4-invariant refinement") {
    auto s = standard_space(4);
    auto sp = symplectic_group(s);
    auto table = gflinalg::BitGroupTable::build(sp);
    for (const auto& q : all_refinements(s)) {
      bool invariant = true;
      for (const auto& m : table.elems)
        if (cocycle(q, m) != 0) {
          invariant = false;
          break;
        }
      CHECK_FALSE(invariant);
    }
  }

  TEST_CASE("dickson homomorphism sweep, dims 2 and 4") {
    for (int dim : {2, 4}) {
      auto s = standard_space(dim);
      auto table = gflinalg::BitGroupTable::build(symplectic_group(s));
      auto stats = dickson_homomorphism_sweep(s, table);
      CHECK(stats.failures == 0);
    }
  }

  TEST_CASE("space validation") {
    BitMatrix bad(2, 2);
    bad.set(0, 0, true);
    CHECK_THROWS_AS(SymplecticSpace(2, bad), InputError);
    CHECK_THROWS_AS(SymplecticSpace(3, BitMatrix(3, 3)), InputError);
    CHECK_THROWS_AS(SymplecticSpace(2, BitMatrix(2, 2)), InputError);  // degenerate
  }
}
