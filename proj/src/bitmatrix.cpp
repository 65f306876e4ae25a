#include "twistlab/bitmatrix.hpp"

#include <functional>

#include "twistlab/errors.hpp"

namespace twistlab::gflinalg {

BitMatrix::BitMatrix(int rows, int cols) : rows_(rows), cols_(cols), col_(cols, 0) {
  if (rows < 0 || rows > 64 || cols < 0 || cols > 64)
    throw InputError("BitMatrix dimensions must lie in [0, 64]");
}

BitMatrix BitMatrix::identity(int n) {
  BitMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.col_[i] = BitVec(1) << i;
  return m;
}

void BitMatrix::set(int r, int c, bool v) {
  if (v)
    col_[c] |= BitVec(1) << r;
  else
    col_[c] &= ~(BitVec(1) << r);
}

BitVec BitMatrix::apply(BitVec v) const {
  BitVec out = 0;
  while (v) {
    int j = std::countr_zero(v);
    out ^= col_[j];
    v &= v - 1;
  }
  return out;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(cols_, rows_);
  for (int c = 0; c < cols_; ++c)
    for (int r = 0; r < rows_; ++r)
      if (get(r, c)) t.set(c, r, true);
  return t;
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix out(a.rows_, b.cols_);
  for (int c = 0; c < b.cols_; ++c) out.col_[c] = a.apply(b.col_[c]);
  return out;
}

BitMatrix operator+(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix out(a.rows_, a.cols_);
  for (int c = 0; c < a.cols_; ++c) out.col_[c] = a.col_[c] ^ b.col_[c];
  return out;
}

std::size_t BitMatrix::hash() const {
  std::size_t h = std::hash<int>()(rows_ * 131 + cols_);
  for (BitVec c : col_) h = h * 0x9e3779b97f4a7c15ULL + std::hash<BitVec>()(c);
  return h;
}

namespace {

// Rows of m as column-index bitmasks.
std::vector<BitVec> row_masks(const BitMatrix& m) {
  std::vector<BitVec> rows(m.rows(), 0);
  for (int c = 0; c < m.cols(); ++c) {
    BitVec col = m.column(c);
    while (col) {
      int r = std::countr_zero(col);
      rows[r] |= BitVec(1) << c;
      col &= col - 1;
    }
  }
  return rows;
}

}  // namespace

int rank(const BitMatrix& m) {
  std::vector<BitVec> rows = row_masks(m);
  int rk = 0;
  for (int c = 0; c < m.cols(); ++c) {
    int pivot = -1;
    for (int r = rk; r < (int)rows.size(); ++r)
      if ((rows[r] >> c) & 1) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rk], rows[pivot]);
    for (int r = 0; r < (int)rows.size(); ++r)
      if (r != rk && ((rows[r] >> c) & 1)) rows[r] ^= rows[rk];
    ++rk;
  }
  return rk;
}

int fixed_space_dim(const BitMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("fixed_space_dim: matrix not square");
  BitMatrix d = m + BitMatrix::identity(m.rows());
  return m.rows() - rank(d);
}

std::optional<BitVec> solve(const BitMatrix& a, BitVec b) {
  std::vector<BitVec> rows = row_masks(a);
  std::vector<int> rhs(a.rows());
  for (int r = 0; r < a.rows(); ++r) rhs[r] = (b >> r) & 1;

  std::vector<int> pivot_col;
  int rk = 0;
  for (int c = 0; c < a.cols(); ++c) {
    int pivot = -1;
    for (int r = rk; r < a.rows(); ++r)
      if ((rows[r] >> c) & 1) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rk], rows[pivot]);
    std::swap(rhs[rk], rhs[pivot]);
    for (int r = 0; r < a.rows(); ++r)
      if (r != rk && ((rows[r] >> c) & 1)) {
        rows[r] ^= rows[rk];
        rhs[r] ^= rhs[rk];
      }
    pivot_col.push_back(c);
    ++rk;
  }
  for (int r = rk; r < a.rows(); ++r)
    if (rhs[r]) return std::nullopt;

  BitVec x = 0;
  for (int r = 0; r < rk; ++r)
    if (rhs[r]) x |= BitVec(1) << pivot_col[r];
  return x;
}

std::optional<BitMatrix> BitMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  // Gauss-Jordan on [A | I], working on rows.
  std::vector<BitVec> a = row_masks(*this);
  std::vector<BitVec> inv(rows_);
  for (int i = 0; i < rows_; ++i) inv[i] = BitVec(1) << i;
  for (int c = 0; c < cols_; ++c) {
    int pivot = -1;
    for (int r = c; r < rows_; ++r)
      if ((a[r] >> c) & 1) {
        pivot = r;
        break;
      }
    if (pivot < 0) return std::nullopt;
    std::swap(a[c], a[pivot]);
    std::swap(inv[c], inv[pivot]);
    for (int r = 0; r < rows_; ++r)
      if (r != c && ((a[r] >> c) & 1)) {
        a[r] ^= a[c];
        inv[r] ^= inv[c];
      }
  }
  // inv holds rows of A^-1; repack into columns.
  BitMatrix out(rows_, cols_);
  for (int r = 0; r < rows_; ++r) {
    BitVec row = inv[r];
    while (row) {
      int c = std::countr_zero(row);
      out.set(r, c, true);
      row &= row - 1;
    }
  }
  return out;
}

}  // namespace twistlab::gflinalg
