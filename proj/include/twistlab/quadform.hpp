#pragma once

#include <utility>
#include <vector>

#include "twistlab/exec.hpp"
#include "twistlab/gflinalg.hpp"

namespace twistlab::quadform {

using gflinalg::BitMatrix;
using gflinalg::BitVec;
using gflinalg::BitGroupTable;
using gflinalg::MatrixGroup;

/// F2 space with a nondegenerate alternating pairing. Validated at
/// construction: gram symmetric with zero diagonal, full rank, dim even.
struct SymplecticSpace {
  int dim = 0;
  BitMatrix gram;
  BitMatrix gram_inv;

  SymplecticSpace() = default;
  SymplecticSpace(int dim, BitMatrix gram);

  /// <u, w>.
  int pair(BitVec u, BitVec w) const;
};

/// Standard space with adjacent hyperbolic pairs (e1 f1 e2 f2 ...).
SymplecticSpace standard_space(int dim);

/// Quadratic refinement q of the pairing, determined by its values on the
/// standard basis: q(sum_i v_i e_i) = sum v_i q(e_i) + sum_{i<j} v_i v_j <e_i,e_j>.
struct QuadraticRefinement {
  SymplecticSpace space;
  BitVec basis_vals = 0;  // bit i = q(e_i)
};

int eval(const QuadraticRefinement& q, BitVec v);

/// All 2^dim refinements, ordered by basis-value mask.
std::vector<QuadraticRefinement> all_refinements(const SymplecticSpace& s);

struct SymplecticBasis {
  std::vector<std::pair<BitVec, BitVec>> pairs;  // (e_i, f_i)
};

/// Hyperbolic basis by greedy pivoting in index order; deterministic.
SymplecticBasis symplectic_basis(const SymplecticSpace& s);

int arf(const QuadraticRefinement& q);

/// q + v, i.e. (q+v)(w) = q(w) + <v, w>.
QuadraticRefinement translate(const QuadraticRefinement& q, BitVec v);

bool is_symplectic(const SymplecticSpace& s, const BitMatrix& m);

/// sigma in O(q): symplectic and preserves q (checked on basis vectors and
/// pairwise basis sums).
bool preserves(const QuadraticRefinement& q, const BitMatrix& m);

/// The unique w with q(sigma^-1 u) - q(u) = <u, w> for all u. Requires
/// sigma symplectic. Satisfies c(sigma tau) = c(sigma) + sigma c(tau).
BitVec cocycle(const QuadraticRefinement& q, const BitMatrix& sigma);

/// Fixed-space dimension mod 2; requires sigma in O(q).
int dickson(const QuadraticRefinement& q, const BitMatrix& sigma);

/// Group generated by all symplectic transvections v -> v + <v,w>w.
MatrixGroup symplectic_group(const SymplecticSpace& s,
                             std::size_t cap = gflinalg::kDefaultClosureCap);

/// Subgroup of `ambient` preserving q.
MatrixGroup orthogonal_group(const QuadraticRefinement& q, const MatrixGroup& ambient,
                             std::size_t cap = gflinalg::kDefaultClosureCap);

/// Indices (into a closure table) of the q-preserving elements.
std::vector<std::size_t> orthogonal_indices(const QuadraticRefinement& q,
                                            const BitGroupTable& ambient);

struct SweepStats {
  long long cases = 0;
  long long failures = 0;
  bool ok() const { return failures == 0; }
};

/// d_q(st) = d_q(s) + d_q(t) over every refinement of `s` and every pair in
/// its orthogonal group. `table` must be the closure of Sp(s).
SweepStats dickson_homomorphism_sweep(const SymplecticSpace& s, const BitGroupTable& table,
                                      Exec exec = Exec::parallel);
SweepStats dickson_homomorphism_sweep_serial(const SymplecticSpace& s,
                                             const BitGroupTable& table);

/// Polar identity q(v+w)+q(v)+q(w) = <v,w> over all refinements and vector pairs.
SweepStats polar_identity_sweep(const SymplecticSpace& s);

/// arf(q+v) = arf(q) + q(v) over all refinements and vectors.
SweepStats arf_translation_sweep(const SymplecticSpace& s);

}  // namespace twistlab::quadform
