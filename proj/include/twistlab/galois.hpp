#pragma once

#include <memory>
#include <optional>

#include "twistlab/exec.hpp"
#include "twistlab/gflinalg.hpp"
#include "twistlab/intpoly.hpp"
#include "twistlab/quadform.hpp"

namespace twistlab::galois {

using gflinalg::BitMatrix;
using gflinalg::FpMatrix;
using gflinalg::MatrixGroup;

/// A finite group of symplectic similitudes acting on T = F_p^dim. The
/// multiplier lambda(g) is the factor with <gv, gw> = lambda(g) <v, w>;
/// it is identically 1 when p = 2, and computing it for p > 2 requires the
/// Gram matrix of the pairing.
struct GaloisImage {
  int p = 2;
  std::shared_ptr<const MatrixGroup> group;
  std::optional<FpMatrix> gram;
  std::vector<int> multiplier;  // per element, values in [1, p)
};

GaloisImage make_galois_image(int p, std::shared_ptr<const MatrixGroup> group,
                              std::optional<FpMatrix> gram = std::nullopt);

/// (-1)^(dim of the fixed space of the element).
int epsilon(const GaloisImage& gi, std::size_t elem);

enum class EpsKind {
  HomomorphismTrivial,
  HomomorphismNontrivial,
  NotHomomorphism,
  TrivialOnSp,
  NontrivialOnSp,
};

struct EpsilonClassification {
  EpsKind kind;
  /// p = 2, NotHomomorphism: first (i, j) with eps(ij) != eps(i)eps(j).
  std::optional<std::pair<std::size_t, std::size_t>> witness_pair;
  /// p > 2, NontrivialOnSp: first multiplier-1 element with eps = -1.
  std::optional<std::size_t> witness_element;
  /// p = 2, HomomorphismNontrivial: the index-2 kernel.
  std::vector<std::size_t> kernel;
};

/// p = 2: exhaustive homomorphism test over all pairs; p > 2: restrict eps
/// to the multiplier-1 subgroup and test triviality.
EpsilonClassification classify(const GaloisImage& gi);

struct CycleType {
  std::vector<int> parts;  // descending
  int sum() const;
  std::string dashed() const;  // "3-2-1"
};

/// Sign of a permutation with this cycle type.
int sign_of_cycle_type(const CycleType& ct);

/// -sgn if every part is even and n = 2 (mod 4), else sgn.
int epsilon_from_cycle_type(const CycleType& ct, int n);

/// Jacobian 2-torsion of y^2 = f(x) with deg f = n, modelled on
/// even-cardinality subsets of the n roots (modulo the full set when n is
/// even) with the intersection-parity pairing. The basis is the first 2g
/// independent even subsets in increasing mask order.
class JacobianTwoTorsionModel {
 public:
  explicit JacobianTwoTorsionModel(int n);

  int n() const { return n_; }
  int dim() const { return (int)basis_.size(); }
  const quadform::SymplecticSpace& space() const { return space_; }
  const std::vector<std::uint32_t>& basis_subsets() const { return basis_; }

  /// Matrix of a permutation of the roots (perm[i] = image of root i).
  BitMatrix matrix_of(const std::vector<int>& perm) const;

 private:
  int n_;
  std::vector<std::uint32_t> basis_;
  quadform::SymplecticSpace space_;
  BitMatrix coord_system_;  // columns: basis subsets (+ full set if n even)
};

/// Image of S_n on the model, generated by the transposition (0 1) and the
/// n-cycle; the standard brute-force oracle for the cycle-type formula.
GaloisImage hyperelliptic_rep(int n, std::size_t cap = gflinalg::kDefaultClosureCap);

struct ThetaResult {
  bool generates;    // S spans G/G^2 x {+-1}
  bool eps_not_hom;  // direct pair test
};

/// Both sides of the surjectivity criterion: whether
/// {(g mod G^2, eps(g))} generates G/G^2 x {+-1}, and whether eps fails to
/// be a homomorphism. The two flags agree.
ThetaResult theta_criterion(const GaloisImage& gi);

struct FrobeniusSample {
  std::uint64_t prime = 0;
  bool ramified = false;
  CycleType type;  // empty when ramified
};

/// Cycle types of Frobenius via factorization of f mod ell (squarefree +
/// distinct-degree + Cantor-Zassenhaus equal-degree splitting, randomness
/// seeded from (f, ell, seed)).
class FrobeniusSampler {
 public:
  explicit FrobeniusSampler(IntPolynomial f, std::uint64_t seed = 0);

  const IntPolynomial& poly() const { return f_; }
  const mpz_class& disc() const { return disc_; }

  /// ell must be an odd prime not dividing lead(f).
  FrobeniusSample sample(std::uint64_t ell) const;

  /// All odd primes in [lo, hi] that do not divide lead(f); bounds < 2^32.
  std::vector<FrobeniusSample> sweep(std::uint64_t lo, std::uint64_t hi,
                                     Exec exec = Exec::parallel) const;
  std::vector<FrobeniusSample> sweep_serial(std::uint64_t lo, std::uint64_t hi) const;

 private:
  IntPolynomial f_;
  mpz_class disc_;
  std::uint64_t seed_;
};

bool is_prime_u64(std::uint64_t n);

/// One-shot form of FrobeniusSampler::sample.
FrobeniusSample frobenius_cycle_type(const IntPolynomial& f, std::uint64_t ell,
                                     std::uint64_t seed = 0);

/// Degrees of the irreducible factors of f mod ell (with multiplicity),
/// sorted descending. Exposed for tests.
CycleType factor_degrees_mod_p(const IntPolynomial& f, std::uint64_t ell,
                               std::uint64_t seed);

}  // namespace twistlab::galois
