#pragma once

#include <memory>

#include "twistlab/cohomology.hpp"
#include "twistlab/exec.hpp"
#include "twistlab/quadform.hpp"

namespace twistlab::pollatsek {

using gflinalg::BitGroupTable;
using gflinalg::BitMatrix;
using gflinalg::BitVec;
using quadform::QuadraticRefinement;
using quadform::SweepStats;
using quadform::SymplecticSpace;

/// The extended space W = V + U (orthogonal sum, U coordinates appended
/// last) with q_W = q + q_U, where q_U is the Arf-1 refinement on U and
/// x, y span U with q_W(x) = q_W(y) = <x,y> = 1.
struct PollatsekSpace {
  SymplecticSpace base;
  QuadraticRefinement q;
  SymplecticSpace total;
  QuadraticRefinement qw;
  BitVec x = 0, y = 0;
};

PollatsekSpace extend_space(const SymplecticSpace& v, const QuadraticRefinement& q);

/// The automorphism of W with phi(x) = x, phi(y) = alpha x + c_q(sigma) + y
/// and phi(v) = sigma(v) + <c_q(sigma), sigma(v)> x on V. Lands in O(q_W).
BitMatrix phi(const PollatsekSpace& ps, const BitMatrix& sigma, int alpha);

/// f_q(sigma), evaluated as the Dickson invariant of phi(sigma, 0) on W.
/// Satisfies df_q = c_q cup c_q and restricts to the Dickson homomorphism
/// on O(q).
int f_value(const PollatsekSpace& ps, const BitMatrix& sigma);

/// Does f_{q+v} = f_q + c_q cup v + v cup c_q + v cup dv hold at sigma?
/// Degree-0 cup reading: (c cup v)(s) = <c(s), s v>, (v cup c)(s) = <v, c(s)>,
/// (v cup dv)(s) = <v, s v>.
bool change_of_form_check(const SymplecticSpace& v_space, const QuadraticRefinement& q,
                          BitVec v, const BitMatrix& sigma);

/// Per-element caches of c_q and f_q over a symplectic group closure, plus
/// the 2-cocycle bits (c_q cup c_q)(i, j).
struct SpCache {
  std::vector<BitVec> c;
  std::vector<std::uint8_t> f;

  int cup(const PollatsekSpace& ps, const BitGroupTable& t, std::size_t i,
          std::size_t j) const;
};

SpCache build_cache(const PollatsekSpace& ps, const BitGroupTable& table);

/// E_q: central extension of Sp(V) by F2 with 2-cocycle c_q cup c_q, built
/// on the cohomology extension machinery. Element (i, alpha) multiplies as
/// (i,a)(j,b) = (ij, a+b+(c cup c)(i,j)).
struct EqGroup {
  std::shared_ptr<const gflinalg::MatrixGroup> sp;
  cohomology::CentralExtension ext;
  std::size_t order() const { return 2 * sp->order(); }
};

EqGroup eq_group(const SymplecticSpace& v, const QuadraticRefinement& q,
                 std::size_t cap = gflinalg::kDefaultClosureCap);

// Exhaustive identity sweeps over the closure `table` of Sp(V).

/// phi(sigma, alpha) preserves q_W for every (sigma, alpha).
SweepStats phi_orthogonal_sweep(const PollatsekSpace& ps, const BitGroupTable& table);

/// phi is a homomorphism out of E_q: phi(g)phi(g') = phi(gg') over all pairs.
SweepStats phi_homomorphism_sweep(const PollatsekSpace& ps, const BitGroupTable& table,
                                  Exec exec = Exec::parallel);
SweepStats phi_homomorphism_sweep_serial(const PollatsekSpace& ps, const BitGroupTable& table);

/// f_q(st) + f_q(s) + f_q(t) = (c_q cup c_q)(s, t) over all pairs.
SweepStats coboundary_identity_sweep(const PollatsekSpace& ps, const BitGroupTable& table,
                                     Exec exec = Exec::parallel);
SweepStats coboundary_identity_sweep_serial(const PollatsekSpace& ps,
                                            const BitGroupTable& table);

/// f_q restricted to O(q) is the Dickson homomorphism.
SweepStats dickson_restriction_sweep(const PollatsekSpace& ps, const BitGroupTable& table);

/// dickson(q_W, phi(1, alpha)) = alpha: the section splitting E_q.
SweepStats splitting_value_sweep(const PollatsekSpace& ps);

/// No other function with df = c_q cup c_q restricts to the Dickson
/// homomorphism: every nontrivial character of Sp(V) is nonzero somewhere
/// on O(q).
SweepStats uniqueness_sweep(const PollatsekSpace& ps, const BitGroupTable& table,
                            const gflinalg::MatrixGroup& sp);

/// change_of_form_check over all (q, v, sigma).
SweepStats change_of_form_sweep(const SymplecticSpace& s, const BitGroupTable& table,
                                Exec exec = Exec::parallel);
SweepStats change_of_form_sweep_serial(const SymplecticSpace& s, const BitGroupTable& table);

}  // namespace twistlab::pollatsek
