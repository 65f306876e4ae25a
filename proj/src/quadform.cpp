#include "twistlab/quadform.hpp"

#include "twistlab/errors.hpp"

namespace twistlab::quadform {

using gflinalg::parity;

SymplecticSpace::SymplecticSpace(int dim, BitMatrix g) : dim(dim), gram(std::move(g)) {
  if (dim <= 0 || dim % 2 != 0) throw InputError("SymplecticSpace: dimension must be positive and even");
  if (gram.rows() != dim || gram.cols() != dim)
    throw InputError("SymplecticSpace: gram shape mismatch");
  for (int i = 0; i < dim; ++i) {
    if (gram.get(i, i)) throw InputError("SymplecticSpace: gram not alternating");
    for (int j = 0; j < i; ++j)
      if (gram.get(i, j) != gram.get(j, i))
        throw InputError("SymplecticSpace: gram not symmetric");
  }
  auto inv = gram.inverse();
  if (!inv) throw InputError("SymplecticSpace: gram degenerate");
  gram_inv = *inv;
}

int SymplecticSpace::pair(BitVec u, BitVec w) const {
  int acc = 0;
  BitVec rest = w;
  while (rest) {
    int j = std::countr_zero(rest);
    acc ^= parity(u & gram.column(j));
    rest &= rest - 1;
  }
  return acc;
}

SymplecticSpace standard_space(int dim) {
  BitMatrix g(dim, dim);
  for (int i = 0; i + 1 < dim; i += 2) {
    g.set(i, i + 1, true);
    g.set(i + 1, i, true);
  }
  return SymplecticSpace(dim, g);
}

int eval(const QuadraticRefinement& q, BitVec v) {
  if (v >> q.space.dim) throw InputError("eval: vector outside space");
  int acc = parity(q.basis_vals & v);
  BitVec rest = v;
  while (rest) {
    int j = std::countr_zero(rest);
    rest &= rest - 1;
    // pairs (i, j) with i < j, both in v
    acc ^= parity(q.space.gram.column(j) & v & ((BitVec(1) << j) - 1));
  }
  return acc;
}

std::vector<QuadraticRefinement> all_refinements(const SymplecticSpace& s) {
  std::vector<QuadraticRefinement> out;
  out.reserve(std::size_t(1) << s.dim);
  for (BitVec m = 0; m < (BitVec(1) << s.dim); ++m) out.push_back({s, m});
  return out;
}

SymplecticBasis symplectic_basis(const SymplecticSpace& s) {
  std::vector<BitVec> remaining;
  for (int i = 0; i < s.dim; ++i) remaining.push_back(BitVec(1) << i);
  SymplecticBasis basis;
  while (!remaining.empty()) {
    BitVec u = remaining[0];
    std::size_t vi = 0;
    for (std::size_t k = 1; k < remaining.size(); ++k)
      if (s.pair(u, remaining[k])) {
        vi = k;
        break;
      }
    if (vi == 0) throw InputError("symplectic_basis: pairing degenerate");
    BitVec v = remaining[vi];
    basis.pairs.emplace_back(u, v);
    std::vector<BitVec> next;
    for (std::size_t k = 1; k < remaining.size(); ++k) {
      if (k == vi) continue;
      BitVec w = remaining[k];
      if (s.pair(w, v)) w ^= u;
      if (s.pair(w, u)) w ^= v;
      next.push_back(w);
    }
    remaining = std::move(next);
  }
  return basis;
}

int arf(const QuadraticRefinement& q) {
  SymplecticBasis b = symplectic_basis(q.space);
  int acc = 0;
  for (auto& [e, f] : b.pairs) acc ^= eval(q, e) & eval(q, f);
  return acc;
}

QuadraticRefinement translate(const QuadraticRefinement& q, BitVec v) {
  if (v >> q.space.dim) throw InputError("translate: vector outside space");
  QuadraticRefinement out = q;
  for (int i = 0; i < q.space.dim; ++i)
    if (parity(v & q.space.gram.column(i))) out.basis_vals ^= BitVec(1) << i;
  return out;
}

bool is_symplectic(const SymplecticSpace& s, const BitMatrix& m) {
  if (m.rows() != s.dim || m.cols() != s.dim) return false;
  for (int i = 0; i < s.dim; ++i)
    for (int j = i + 1; j < s.dim; ++j)
      if (s.pair(m.column(i), m.column(j)) != (int)s.gram.get(i, j)) return false;
  return true;
}

bool preserves(const QuadraticRefinement& q, const BitMatrix& m) {
  if (!is_symplectic(q.space, m)) return false;
  for (int i = 0; i < q.space.dim; ++i) {
    if (eval(q, m.column(i)) != eval(q, BitVec(1) << i)) return false;
    for (int j = i + 1; j < q.space.dim; ++j)
      if (eval(q, m.column(i) ^ m.column(j)) != eval(q, (BitVec(1) << i) ^ (BitVec(1) << j)))
        return false;
  }
  return true;
}

BitVec cocycle(const QuadraticRefinement& q, const BitMatrix& sigma) {
  if (!is_symplectic(q.space, sigma)) throw InputError("cocycle: matrix not symplectic");
  BitMatrix si = *sigma.inverse();
  BitVec rhs = 0;
  for (int k = 0; k < q.space.dim; ++k) {
    int b = eval(q, si.apply(BitVec(1) << k)) ^ eval(q, BitVec(1) << k);
    if (b) rhs |= BitVec(1) << k;
  }
  // <e_k, w> = rhs_k  <=>  gram * w = rhs
  return q.space.gram_inv.apply(rhs);
}

int dickson(const QuadraticRefinement& q, const BitMatrix& sigma) {
  if (!preserves(q, sigma)) throw InputError("dickson: matrix not in O(q)");
  return fixed_space_dim(sigma) & 1;
}

MatrixGroup symplectic_group(const SymplecticSpace& s, std::size_t cap) {
  std::vector<gflinalg::FpMatrix> gens;
  for (BitVec w = 1; w < (BitVec(1) << s.dim); ++w) {
    BitMatrix t(s.dim, s.dim);
    for (int j = 0; j < s.dim; ++j) {
      BitVec col = BitVec(1) << j;
      if (s.pair(BitVec(1) << j, w)) col ^= w;
      t.set_column(j, col);
    }
    gens.push_back(gflinalg::from_bitmatrix(t));
  }
  return MatrixGroup(2, s.dim, std::move(gens), {}, cap);
}

MatrixGroup orthogonal_group(const QuadraticRefinement& q, const MatrixGroup& ambient,
                             std::size_t cap) {
  std::vector<gflinalg::FpMatrix> members;
  for (const auto& m : ambient.elements())
    if (preserves(q, gflinalg::to_bitmatrix(m))) members.push_back(m);
  return MatrixGroup(2, q.space.dim, std::move(members), {}, cap);
}

std::vector<std::size_t> orthogonal_indices(const QuadraticRefinement& q,
                                            const BitGroupTable& ambient) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ambient.order(); ++i)
    if (preserves(q, ambient.elems[i])) out.push_back(i);
  return out;
}

namespace {

SweepStats dickson_pairs(const SymplecticSpace& s, const BitGroupTable& table, bool parallel) {
  SweepStats stats;
  auto refinements = all_refinements(s);
  for (const auto& q : refinements) {
    std::vector<std::size_t> oq = orthogonal_indices(q, table);
    std::vector<std::uint8_t> d(oq.size());
    for (std::size_t k = 0; k < oq.size(); ++k)
      d[k] = (std::uint8_t)(fixed_space_dim(table.elems[oq[k]]) & 1);

    long long fails = 0;
    const long long n = (long long)oq.size();
#pragma omp parallel for reduction(+ : fails) schedule(static) if (parallel)
    for (long long a = 0; a < n; ++a) {
      for (long long b = 0; b < n; ++b) {
        std::size_t prod = table.mul(oq[a], oq[b]);
        int dp = fixed_space_dim(table.elems[prod]) & 1;
        if (dp != (d[a] ^ d[b])) ++fails;
      }
    }
    stats.cases += n * n;
    stats.failures += fails;
  }
  return stats;
}

}  // namespace

SweepStats dickson_homomorphism_sweep(const SymplecticSpace& s, const BitGroupTable& table,
                                      Exec exec) {
  return dickson_pairs(s, table, exec == Exec::parallel);
}

SweepStats dickson_homomorphism_sweep_serial(const SymplecticSpace& s,
                                             const BitGroupTable& table) {
  return dickson_pairs(s, table, false);
}

SweepStats polar_identity_sweep(const SymplecticSpace& s) {
  SweepStats stats;
  BitVec n = BitVec(1) << s.dim;
  for (const auto& q : all_refinements(s))
    for (BitVec v = 0; v < n; ++v)
      for (BitVec w = 0; w < n; ++w) {
        ++stats.cases;
        if ((eval(q, v ^ w) ^ eval(q, v) ^ eval(q, w)) != s.pair(v, w)) ++stats.failures;
      }
  return stats;
}

SweepStats arf_translation_sweep(const SymplecticSpace& s) {
  SweepStats stats;
  for (const auto& q : all_refinements(s)) {
    int a = arf(q);
    for (BitVec v = 0; v < (BitVec(1) << s.dim); ++v) {
      ++stats.cases;
      if (arf(translate(q, v)) != (a ^ eval(q, v))) ++stats.failures;
    }
  }
  return stats;
}

}  // namespace twistlab::quadform
