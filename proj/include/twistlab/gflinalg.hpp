#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistlab/bitmatrix.hpp"

namespace twistlab::gflinalg {

constexpr std::size_t kDefaultClosureCap = 1'000'000;
constexpr int kMaxPrime = 97;

bool is_supported_prime(int p);

/// Vector over F_p, entries reduced to [0, p).
struct FpVector {
  int p = 2;
  std::vector<std::uint8_t> e;

  FpVector() = default;
  FpVector(int p, int dim) : p(p), e(dim, 0) {}
  int dim() const { return (int)e.size(); }

  FpVector operator+(const FpVector& o) const;
  FpVector operator-(const FpVector& o) const;
  bool is_zero() const;
  bool operator==(const FpVector&) const = default;
};

/// Dense row-major matrix over F_p (p prime, p <= 97). F2 work on hot
/// paths uses BitMatrix instead; this type is the generic representation
/// shared by group closures, cohomology and the p > 2 operations.
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(int p, int rows, int cols);
  static FpMatrix identity(int p, int n);

  int p() const { return p_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  std::uint8_t at(int r, int c) const { return a_[(std::size_t)r * cols_ + c]; }
  void set(int r, int c, int v);

  FpVector apply(const FpVector& v) const;
  FpMatrix transposed() const;
  std::optional<FpMatrix> inverse() const;

  friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
  friend FpMatrix operator+(const FpMatrix& a, const FpMatrix& b);
  friend FpMatrix operator-(const FpMatrix& a, const FpMatrix& b);
  bool operator==(const FpMatrix&) const = default;

  const std::vector<std::uint8_t>& bytes() const { return a_; }

 private:
  int p_ = 2, rows_ = 0, cols_ = 0;
  std::vector<std::uint8_t> a_;
};

int rank(const FpMatrix& m);
int fixed_subspace_dim(const FpMatrix& m);
std::optional<FpVector> solve(const FpMatrix& a, const FpVector& b);

/// Basis of ker(m) as column vectors, deterministic order.
std::vector<FpVector> kernel_basis(const FpMatrix& m);

FpMatrix from_bitmatrix(const BitMatrix& m);
BitMatrix to_bitmatrix(const FpMatrix& m);
FpVector from_bitvec(BitVec v, int dim);
BitVec to_bitvec(const FpVector& v);

/// Finite matrix group over F_p, closed eagerly at construction by
/// breadth-first products of the generators (in the given order), starting
/// from the identity. Element order is the BFS insertion order, so element
/// indices are reproducible. Immutable afterwards.
class MatrixGroup {
 public:
  MatrixGroup(int p, int dim, std::vector<FpMatrix> generators,
              std::vector<std::string> labels = {},
              std::size_t cap = kDefaultClosureCap);

  int p() const { return p_; }
  int dim() const { return dim_; }
  std::size_t order() const { return elems_.size(); }

  const std::vector<FpMatrix>& elements() const { return elems_; }
  const FpMatrix& element(std::size_t i) const { return elems_[i]; }
  const std::vector<FpMatrix>& generators() const { return gens_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::size_t>& generator_indices() const { return gen_idx_; }

  std::size_t index_of(const FpMatrix& m) const;  // throws if absent
  bool contains(const FpMatrix& m) const;

  std::size_t mul(std::size_t i, std::size_t j) const;
  std::size_t inv(std::size_t i) const;
  std::size_t identity_index() const { return 0; }

 private:
  int p_, dim_;
  std::vector<FpMatrix> gens_;
  std::vector<std::string> labels_;
  std::vector<FpMatrix> elems_;
  std::vector<std::size_t> gen_idx_;
  std::vector<std::size_t> inv_;
  // element key -> index
  struct Lookup;
  std::vector<std::pair<std::string, std::size_t>> lookup_;
  std::size_t find(const FpMatrix& m) const;  // npos if absent
};

/// Fast packed-bit view of a p = 2 group, with full multiplication and
/// inverse tables. Meant for the exhaustive pair sweeps; requires
/// |G| <= 65535.
struct BitGroupTable {
  int dim = 0;
  std::vector<BitMatrix> elems;
  std::vector<std::uint16_t> mult;  // order*order
  std::vector<std::uint16_t> inv;

  std::size_t order() const { return elems.size(); }
  std::uint16_t mul(std::size_t i, std::size_t j) const {
    return mult[i * elems.size() + j];
  }

  static BitGroupTable build(const MatrixGroup& g);
};

FpMatrix permutation_matrix(const std::vector<int>& perm, int p);

/// Indices of the subgroup generated by `gens` (indices into the table),
/// sorted ascending.
std::vector<std::size_t> subgroup_closure(const BitGroupTable& t,
                                          const std::vector<std::size_t>& gens);

/// First pair (i, j) in lexicographic index order generating the whole
/// group of the table.
std::pair<std::size_t, std::size_t> find_generating_pair(const BitGroupTable& t);

/// The exponent-2 abelianisation G/G^2 (G^2 = subgroup generated by all
/// squares; it contains the commutators). `coords[g]` are F2 coordinates of
/// the coset of g in a fixed basis of the quotient.
struct TwoTorsionQuotient {
  int rank = 0;
  std::vector<std::uint32_t> coords;
};

TwoTorsionQuotient two_torsion_quotient(const MatrixGroup& g);

/// All homomorphisms G -> F2, each as one value per element. The trivial
/// character comes first.
std::vector<std::vector<std::uint8_t>> f2_characters(const MatrixGroup& g);

}  // namespace twistlab::gflinalg
