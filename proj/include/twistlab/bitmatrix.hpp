#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

namespace twistlab::gflinalg {

/// An F2 vector of dimension <= 64, bit i = coordinate i.
using BitVec = std::uint64_t;

inline int parity(BitVec v) { return std::popcount(v) & 1; }

/// Dense F2 matrix with columns packed into machine words. Matrices act on
/// column vectors, so mul(A,B) is the matrix of the composite "apply B,
/// then A" and apply(v) is A*v.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols);
  static BitMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool get(int r, int c) const { return (col_[c] >> r) & 1; }
  void set(int r, int c, bool v);

  BitVec column(int c) const { return col_[c]; }
  void set_column(int c, BitVec v) { col_[c] = v; }

  /// A*v for a column vector packed into a word.
  BitVec apply(BitVec v) const;

  BitMatrix transposed() const;
  std::optional<BitMatrix> inverse() const;

  friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);
  friend BitMatrix operator+(const BitMatrix& a, const BitMatrix& b);
  bool operator==(const BitMatrix&) const = default;

  std::size_t hash() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<BitVec> col_;
};

/// Row rank by Gaussian elimination.
int rank(const BitMatrix& m);

/// dim ker(m - I) for square m.
int fixed_space_dim(const BitMatrix& m);

/// Some x with a*x = b, or nullopt if inconsistent. Free variables are set
/// to zero, so the result is deterministic.
std::optional<BitVec> solve(const BitMatrix& a, BitVec b);

}  // namespace twistlab::gflinalg
