#include "twistlab/pollatsek.hpp"

#include "twistlab/errors.hpp"

namespace twistlab::pollatsek {

using gflinalg::parity;

PollatsekSpace extend_space(const SymplecticSpace& v, const QuadraticRefinement& q) {
  int n = v.dim;
  BitMatrix gw(n + 2, n + 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (v.gram.get(i, j)) gw.set(i, j, true);
  gw.set(n, n + 1, true);
  gw.set(n + 1, n, true);

  PollatsekSpace ps;
  ps.base = v;
  ps.q = q;
  ps.total = SymplecticSpace(n + 2, gw);
  ps.qw = QuadraticRefinement{ps.total, q.basis_vals | (BitVec(3) << n)};
  ps.x = BitVec(1) << n;
  ps.y = BitVec(1) << (n + 1);
  return ps;
}

BitMatrix phi(const PollatsekSpace& ps, const BitMatrix& sigma, int alpha) {
  const SymplecticSpace& v = ps.base;
  BitVec c = quadform::cocycle(ps.q, sigma);
  int n = v.dim;
  BitMatrix out(n + 2, n + 2);
  for (int j = 0; j < n; ++j) {
    BitVec sv = sigma.column(j);
    BitVec col = sv;
    if (v.pair(c, sv)) col |= ps.x;
    out.set_column(j, col);
  }
  out.set_column(n, ps.x);
  out.set_column(n + 1, (alpha ? ps.x : 0) ^ c ^ ps.y);
  return out;
}

int f_value(const PollatsekSpace& ps, const BitMatrix& sigma) {
  return quadform::dickson(ps.qw, phi(ps, sigma, 0));
}

bool change_of_form_check(const SymplecticSpace& s, const QuadraticRefinement& q, BitVec v,
                          const BitMatrix& sigma) {
  QuadraticRefinement q2 = quadform::translate(q, v);
  PollatsekSpace ps = extend_space(s, q);
  PollatsekSpace ps2 = extend_space(s, q2);
  BitVec c = quadform::cocycle(q, sigma);
  BitVec sv = sigma.apply(v);
  int rhs = f_value(ps, sigma) ^ s.pair(c, sv) ^ s.pair(v, c) ^ s.pair(v, sv);
  return f_value(ps2, sigma) == rhs;
}

int SpCache::cup(const PollatsekSpace& ps, const BitGroupTable& t, std::size_t i,
                 std::size_t j) const {
  return ps.base.pair(c[i], t.elems[i].apply(c[j]));
}

SpCache build_cache(const PollatsekSpace& ps, const BitGroupTable& table) {
  SpCache cache;
  std::size_t n = table.order();
  cache.c.resize(n);
  cache.f.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    cache.c[i] = quadform::cocycle(ps.q, table.elems[i]);
    cache.f[i] = (std::uint8_t)f_value(ps, table.elems[i]);
  }
  return cache;
}

EqGroup eq_group(const SymplecticSpace& v, const QuadraticRefinement& q, std::size_t cap) {
  if (v.dim > 4) throw SizeLimitError("eq_group: dimension capped at 4");
  auto sp = std::make_shared<const gflinalg::MatrixGroup>(quadform::symplectic_group(v, cap));
  BitGroupTable table = BitGroupTable::build(*sp);
  PollatsekSpace ps = extend_space(v, q);
  SpCache cache = build_cache(ps, table);

  auto mod = std::make_shared<const cohomology::GroupModule>(
      cohomology::GroupModule::trivial(sp, 2, 1));
  auto coc = std::make_shared<cohomology::Cochain>(2, mod);
  std::size_t n = table.order();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      coc->at({i, j}).e[0] = (std::uint8_t)cache.cup(ps, table, i, j);

  return EqGroup{sp, cohomology::CentralExtension(std::move(coc))};
}

SweepStats phi_orthogonal_sweep(const PollatsekSpace& ps, const BitGroupTable& table) {
  SweepStats stats;
  for (const BitMatrix& sigma : table.elems)
    for (int alpha = 0; alpha < 2; ++alpha) {
      ++stats.cases;
      if (!quadform::preserves(ps.qw, phi(ps, sigma, alpha))) ++stats.failures;
    }
  return stats;
}

namespace {

// Pack the (c cup c) bits once; pair sweeps then run on flat arrays.
std::vector<std::uint8_t> cup_bits(const PollatsekSpace& ps, const BitGroupTable& t,
                                   const SpCache& cache) {
  std::size_t n = t.order();
  std::vector<std::uint8_t> bits(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) bits[i * n + j] = (std::uint8_t)cache.cup(ps, t, i, j);
  return bits;
}

SweepStats phi_hom_pairs(const PollatsekSpace& ps, const BitGroupTable& t, bool parallel) {
  std::size_t n = t.order();
  SpCache cache = build_cache(ps, t);
  std::vector<std::uint8_t> cup = cup_bits(ps, t, cache);
  std::vector<BitMatrix> phi0(n), phi1(n);
  for (std::size_t i = 0; i < n; ++i) {
    phi0[i] = phi(ps, t.elems[i], 0);
    phi1[i] = phi(ps, t.elems[i], 1);
  }
  auto phi_of = [&](std::size_t i, int a) -> const BitMatrix& { return a ? phi1[i] : phi0[i]; };

  long long fails = 0;
  const long long nn = (long long)n;
#pragma omp parallel for reduction(+ : fails) schedule(static) if (parallel)
  for (long long i = 0; i < nn; ++i)
    for (long long j = 0; j < nn; ++j) {
      std::size_t ij = t.mul(i, j);
      int bit = cup[i * nn + j];
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if (!(phi_of(i, a) * phi_of(j, b) == phi_of(ij, a ^ b ^ bit))) ++fails;
    }
  SweepStats stats;
  stats.cases = nn * nn * 4;
  stats.failures = fails;
  return stats;
}

SweepStats coboundary_pairs(const PollatsekSpace& ps, const BitGroupTable& t, bool parallel) {
  std::size_t n = t.order();
  SpCache cache = build_cache(ps, t);
  std::vector<std::uint8_t> cup = cup_bits(ps, t, cache);

  long long fails = 0;
  const long long nn = (long long)n;
#pragma omp parallel for reduction(+ : fails) schedule(static) if (parallel)
  for (long long i = 0; i < nn; ++i)
    for (long long j = 0; j < nn; ++j) {
      int lhs = cache.f[t.mul(i, j)] ^ cache.f[i] ^ cache.f[j];
      if (lhs != cup[i * nn + j]) ++fails;
    }
  SweepStats stats;
  stats.cases = nn * nn;
  stats.failures = fails;
  return stats;
}

SweepStats change_of_form_all(const SymplecticSpace& s, const BitGroupTable& t, bool parallel) {
  const int dim = s.dim;
  const BitVec nq = BitVec(1) << dim;
  const std::size_t n = t.order();

  // f and c tables for every refinement.
  std::vector<std::vector<BitVec>> c(nq);
  std::vector<std::vector<std::uint8_t>> f(nq);
  for (BitVec qm = 0; qm < nq; ++qm) {
    QuadraticRefinement q{s, qm};
    PollatsekSpace ps = extend_space(s, q);
    SpCache cache = build_cache(ps, t);
    c[qm] = std::move(cache.c);
    f[qm] = std::move(cache.f);
  }

  long long fails = 0;
  const long long total = (long long)nq * (long long)nq;
#pragma omp parallel for reduction(+ : fails) schedule(static) if (parallel)
  for (long long qv = 0; qv < total; ++qv) {
    BitVec qm = (BitVec)(qv / nq);
    BitVec v = (BitVec)(qv % nq);
    QuadraticRefinement q{s, qm};
    BitVec q2m = quadform::translate(q, v).basis_vals;
    for (std::size_t i = 0; i < n; ++i) {
      BitVec sv = t.elems[i].apply(v);
      int rhs = f[qm][i] ^ s.pair(c[qm][i], sv) ^ s.pair(v, c[qm][i]) ^ s.pair(v, sv);
      if (f[q2m][i] != rhs) ++fails;
    }
  }
  SweepStats stats;
  stats.cases = total * (long long)n;
  stats.failures = fails;
  return stats;
}

}  // namespace

SweepStats phi_homomorphism_sweep(const PollatsekSpace& ps, const BitGroupTable& table,
                                  Exec exec) {
  return phi_hom_pairs(ps, table, exec == Exec::parallel);
}

SweepStats phi_homomorphism_sweep_serial(const PollatsekSpace& ps, const BitGroupTable& table) {
  return phi_hom_pairs(ps, table, false);
}

SweepStats coboundary_identity_sweep(const PollatsekSpace& ps, const BitGroupTable& table,
                                     Exec exec) {
  return coboundary_pairs(ps, table, exec == Exec::parallel);
}

SweepStats coboundary_identity_sweep_serial(const PollatsekSpace& ps,
                                            const BitGroupTable& table) {
  return coboundary_pairs(ps, table, false);
}

SweepStats dickson_restriction_sweep(const PollatsekSpace& ps, const BitGroupTable& table) {
  SweepStats stats;
  for (const BitMatrix& sigma : table.elems) {
    if (!quadform::preserves(ps.q, sigma)) continue;
    ++stats.cases;
    if (f_value(ps, sigma) != quadform::dickson(ps.q, sigma)) ++stats.failures;
  }
  return stats;
}

SweepStats splitting_value_sweep(const PollatsekSpace& ps) {
  SweepStats stats;
  BitMatrix id = BitMatrix::identity(ps.base.dim);
  for (int alpha = 0; alpha < 2; ++alpha) {
    ++stats.cases;
    if (quadform::dickson(ps.qw, phi(ps, id, alpha)) != alpha) ++stats.failures;
  }
  return stats;
}

SweepStats uniqueness_sweep(const PollatsekSpace& ps, const BitGroupTable& table,
                            const gflinalg::MatrixGroup& sp) {
  // A second solution would differ from f_q by a character of Sp(V)
  // vanishing on O(q); rule each nontrivial character out.
  SweepStats stats;
  auto chars = gflinalg::f2_characters(sp);
  std::vector<std::size_t> oq = quadform::orthogonal_indices(ps.q, table);
  for (std::size_t k = 1; k < chars.size(); ++k) {
    ++stats.cases;
    bool nonzero_on_oq = false;
    for (std::size_t i : oq)
      if (chars[k][i]) {
        nonzero_on_oq = true;
        break;
      }
    if (!nonzero_on_oq) ++stats.failures;
  }
  return stats;
}

SweepStats change_of_form_sweep(const SymplecticSpace& s, const BitGroupTable& table,
                                Exec exec) {
  return change_of_form_all(s, table, exec == Exec::parallel);
}

SweepStats change_of_form_sweep_serial(const SymplecticSpace& s, const BitGroupTable& table) {
  return change_of_form_all(s, table, false);
}

}  // namespace twistlab::pollatsek
