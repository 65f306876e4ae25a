#include "twistlab/gflinalg.hpp"

#include <algorithm>
#include <unordered_map>

#include "twistlab/errors.hpp"

namespace twistlab::gflinalg {

bool is_supported_prime(int p) {
  if (p < 2 || p > kMaxPrime) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace {

int mod_inverse(int a, int p) {
  // p is a small prime; Fermat.
  int r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

void check_prime(int p) {
  if (!is_supported_prime(p))
    throw InputError("unsupported modulus " + std::to_string(p) +
                     " (need a prime <= " + std::to_string(kMaxPrime) + ")");
}

}  // namespace

FpVector FpVector::operator+(const FpVector& o) const {
  FpVector r(p, dim());
  for (int i = 0; i < dim(); ++i) r.e[i] = (std::uint8_t)((e[i] + o.e[i]) % p);
  return r;
}

FpVector FpVector::operator-(const FpVector& o) const {
  FpVector r(p, dim());
  for (int i = 0; i < dim(); ++i) r.e[i] = (std::uint8_t)((e[i] + p - o.e[i]) % p);
  return r;
}

bool FpVector::is_zero() const {
  return std::all_of(e.begin(), e.end(), [](std::uint8_t x) { return x == 0; });
}

FpMatrix::FpMatrix(int p, int rows, int cols)
    : p_(p), rows_(rows), cols_(cols), a_((std::size_t)rows * cols, 0) {
  check_prime(p);
}

FpMatrix FpMatrix::identity(int p, int n) {
  FpMatrix m(p, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

void FpMatrix::set(int r, int c, int v) {
  a_[(std::size_t)r * cols_ + c] = (std::uint8_t)(((v % p_) + p_) % p_);
}

FpVector FpMatrix::apply(const FpVector& v) const {
  if (v.dim() != cols_) throw InputError("apply: dimension mismatch");
  FpVector out(p_, rows_);
  for (int r = 0; r < rows_; ++r) {
    int acc = 0;
    for (int c = 0; c < cols_; ++c) acc += at(r, c) * v.e[c];
    out.e[r] = (std::uint8_t)(acc % p_);
  }
  return out;
}

FpMatrix FpMatrix::transposed() const {
  FpMatrix t(p_, cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
  return t;
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
  if (a.cols_ != b.rows_ || a.p_ != b.p_) throw InputError("mul: shape/modulus mismatch");
  FpMatrix out(a.p_, a.rows_, b.cols_);
  for (int r = 0; r < a.rows_; ++r)
    for (int k = 0; k < a.cols_; ++k) {
      int av = a.at(r, k);
      if (!av) continue;
      for (int c = 0; c < b.cols_; ++c) {
        int cur = out.at(r, c) + av * b.at(k, c);
        out.a_[(std::size_t)r * out.cols_ + c] = (std::uint8_t)(cur % a.p_);
      }
    }
  return out;
}

FpMatrix operator+(const FpMatrix& a, const FpMatrix& b) {
  FpMatrix out(a.p_, a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.a_.size(); ++i)
    out.a_[i] = (std::uint8_t)((a.a_[i] + b.a_[i]) % a.p_);
  return out;
}

FpMatrix operator-(const FpMatrix& a, const FpMatrix& b) {
  FpMatrix out(a.p_, a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.a_.size(); ++i)
    out.a_[i] = (std::uint8_t)((a.a_[i] + a.p_ - b.a_[i]) % a.p_);
  return out;
}

namespace {

struct Echelon {
  std::vector<std::vector<int>> rows;  // reduced rows, rhs appended if present
  std::vector<int> pivot_col;
  int rank = 0;
};

// Row-reduce m (optionally augmented with rhs) to reduced echelon form.
Echelon echelonize(const FpMatrix& m, const FpVector* rhs) {
  int p = m.p();
  int width = m.cols() + (rhs ? 1 : 0);
  Echelon e;
  e.rows.assign(m.rows(), std::vector<int>(width, 0));
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) e.rows[r][c] = m.at(r, c);
    if (rhs) e.rows[r][m.cols()] = rhs->e[r];
  }
  for (int c = 0; c < m.cols(); ++c) {
    int pivot = -1;
    for (int r = e.rank; r < m.rows(); ++r)
      if (e.rows[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(e.rows[e.rank], e.rows[pivot]);
    int inv = mod_inverse(e.rows[e.rank][c], p);
    for (int j = 0; j < width; ++j) e.rows[e.rank][j] = e.rows[e.rank][j] * inv % p;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == e.rank) continue;
      int f = e.rows[r][c];
      if (!f) continue;
      for (int j = 0; j < width; ++j)
        e.rows[r][j] = (e.rows[r][j] + (p - f) * e.rows[e.rank][j]) % p;
    }
    e.pivot_col.push_back(c);
    ++e.rank;
  }
  return e;
}

}  // namespace

std::optional<FpMatrix> FpMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  int n = rows_;
  // Gauss-Jordan on [A | I].
  std::vector<std::vector<int>> w(n, std::vector<int>(2 * n, 0));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) w[r][c] = at(r, c);
    w[r][n + r] = 1;
  }
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r)
      if (w[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return std::nullopt;
    std::swap(w[c], w[pivot]);
    int inv = mod_inverse(w[c][c], p_);
    for (int j = 0; j < 2 * n; ++j) w[c][j] = w[c][j] * inv % p_;
    for (int r = 0; r < n; ++r) {
      if (r == c || w[r][c] == 0) continue;
      int f = w[r][c];
      for (int j = 0; j < 2 * n; ++j) w[r][j] = (w[r][j] + (p_ - f) * w[c][j]) % p_;
    }
  }
  FpMatrix out(p_, n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out.set(r, c, w[r][n + c]);
  return out;
}

int rank(const FpMatrix& m) { return echelonize(m, nullptr).rank; }

int fixed_subspace_dim(const FpMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("fixed_subspace_dim: matrix not square");
  return m.cols() - rank(m - FpMatrix::identity(m.p(), m.rows()));
}

std::optional<FpVector> solve(const FpMatrix& a, const FpVector& b) {
  if (a.rows() != b.dim()) throw InputError("solve: dimension mismatch");
  Echelon e = echelonize(a, &b);
  for (int r = e.rank; r < a.rows(); ++r)
    if (e.rows[r][a.cols()] != 0) return std::nullopt;
  FpVector x(a.p(), a.cols());
  for (int r = 0; r < e.rank; ++r) x.e[e.pivot_col[r]] = (std::uint8_t)e.rows[r][a.cols()];
  return x;
}

std::vector<FpVector> kernel_basis(const FpMatrix& m) {
  Echelon e = echelonize(m, nullptr);
  int p = m.p();
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : e.pivot_col) is_pivot[c] = true;
  std::vector<FpVector> basis;
  for (int c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    FpVector v(p, m.cols());
    v.e[c] = 1;
    for (int r = 0; r < e.rank; ++r)
      v.e[e.pivot_col[r]] = (std::uint8_t)((p - e.rows[r][c]) % p);
    basis.push_back(std::move(v));
  }
  return basis;
}

FpMatrix from_bitmatrix(const BitMatrix& m) {
  FpMatrix out(2, m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (m.get(r, c)) out.set(r, c, 1);
  return out;
}

BitMatrix to_bitmatrix(const FpMatrix& m) {
  if (m.p() != 2) throw InputError("to_bitmatrix: modulus must be 2");
  BitMatrix out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (m.at(r, c)) out.set(r, c, true);
  return out;
}

FpVector from_bitvec(BitVec v, int dim) {
  FpVector out(2, dim);
  for (int i = 0; i < dim; ++i) out.e[i] = (v >> i) & 1;
  return out;
}

BitVec to_bitvec(const FpVector& v) {
  if (v.p != 2) throw InputError("to_bitvec: modulus must be 2");
  BitVec out = 0;
  for (int i = 0; i < v.dim(); ++i)
    if (v.e[i]) out |= BitVec(1) << i;
  return out;
}

namespace {

std::string key_of(const FpMatrix& m) {
  return std::string(m.bytes().begin(), m.bytes().end());
}

}  // namespace

MatrixGroup::MatrixGroup(int p, int dim, std::vector<FpMatrix> generators,
                         std::vector<std::string> labels, std::size_t cap)
    : p_(p), dim_(dim), gens_(std::move(generators)), labels_(std::move(labels)) {
  check_prime(p);
  for (const FpMatrix& g : gens_) {
    if (g.p() != p || g.rows() != dim || g.cols() != dim)
      throw InputError("MatrixGroup: generator shape/modulus mismatch");
    if (!g.inverse()) throw InputError("MatrixGroup: generator not invertible");
  }

  std::unordered_map<std::string, std::size_t> seen;
  elems_.push_back(FpMatrix::identity(p, dim));
  seen.emplace(key_of(elems_[0]), 0);
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    for (const FpMatrix& g : gens_) {
      FpMatrix y = elems_[i] * g;
      auto [it, fresh] = seen.emplace(key_of(y), elems_.size());
      if (fresh) {
        if (elems_.size() >= cap)
          throw SizeLimitError("group closure exceeds cap " + std::to_string(cap));
        elems_.push_back(std::move(y));
      }
    }
  }

  lookup_.reserve(seen.size());
  for (auto& [k, v] : seen) lookup_.emplace_back(k, v);
  std::sort(lookup_.begin(), lookup_.end());

  gen_idx_.reserve(gens_.size());
  for (const FpMatrix& g : gens_) gen_idx_.push_back(index_of(g));

  inv_.assign(elems_.size(), 0);
  for (std::size_t i = 0; i < elems_.size(); ++i)
    inv_[i] = index_of(*elems_[i].inverse());
}

std::size_t MatrixGroup::find(const FpMatrix& m) const {
  std::string k = key_of(m);
  auto it = std::lower_bound(lookup_.begin(), lookup_.end(), k,
                             [](const auto& a, const std::string& b) { return a.first < b; });
  if (it == lookup_.end() || it->first != k) return (std::size_t)-1;
  return it->second;
}

std::size_t MatrixGroup::index_of(const FpMatrix& m) const {
  std::size_t i = find(m);
  if (i == (std::size_t)-1) throw InputError("element not in group");
  return i;
}

bool MatrixGroup::contains(const FpMatrix& m) const { return find(m) != (std::size_t)-1; }

std::size_t MatrixGroup::mul(std::size_t i, std::size_t j) const {
  return index_of(elems_[i] * elems_[j]);
}

std::size_t MatrixGroup::inv(std::size_t i) const { return inv_[i]; }

BitGroupTable BitGroupTable::build(const MatrixGroup& g) {
  if (g.p() != 2) throw InputError("BitGroupTable: group must be over F_2");
  std::size_t n = g.order();
  if (n > 65535) throw SizeLimitError("BitGroupTable: group too large for table");
  BitGroupTable t;
  t.dim = g.dim();
  t.elems.reserve(n);
  for (const FpMatrix& m : g.elements()) t.elems.push_back(to_bitmatrix(m));

  std::unordered_map<std::size_t, std::vector<std::uint16_t>> buckets;
  for (std::size_t i = 0; i < n; ++i)
    buckets[t.elems[i].hash()].push_back((std::uint16_t)i);
  auto locate = [&](const BitMatrix& m) -> std::uint16_t {
    for (std::uint16_t i : buckets.at(m.hash()))
      if (t.elems[i] == m) return i;
    throw InputError("BitGroupTable: product escaped group");
  };

  t.mult.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      t.mult[i * n + j] = locate(t.elems[i] * t.elems[j]);
  t.inv.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    t.inv[i] = (std::uint16_t)g.inv(i);
  return t;
}

FpMatrix permutation_matrix(const std::vector<int>& perm, int p) {
  int n = (int)perm.size();
  FpMatrix m(p, n, n);
  for (int j = 0; j < n; ++j) {
    if (perm[j] < 0 || perm[j] >= n) throw InputError("permutation_matrix: bad permutation");
    m.set(perm[j], j, 1);
  }
  return m;
}

std::vector<std::size_t> subgroup_closure(const BitGroupTable& t,
                                          const std::vector<std::size_t>& gens) {
  std::vector<bool> in(t.order(), false);
  std::vector<std::size_t> members{0};
  in[0] = true;
  for (std::size_t qi = 0; qi < members.size(); ++qi)
    for (std::size_t g : gens) {
      std::size_t y = t.mul(members[qi], g);
      if (!in[y]) {
        in[y] = true;
        members.push_back(y);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

std::pair<std::size_t, std::size_t> find_generating_pair(const BitGroupTable& t) {
  if (t.order() == 1) return {0, 0};
  for (std::size_t i = 1; i < t.order(); ++i)
    if (subgroup_closure(t, {i}).size() == t.order()) return {i, i};
  for (std::size_t i = 1; i < t.order(); ++i)
    for (std::size_t j = i + 1; j < t.order(); ++j)
      if (subgroup_closure(t, {i, j}).size() == t.order()) return {i, j};
  throw InputError("find_generating_pair: group is not 2-generated");
}

TwoTorsionQuotient two_torsion_quotient(const MatrixGroup& g) {
  std::size_t n = g.order();
  // Subgroup generated by squares, by BFS on indices.
  std::vector<std::size_t> sq;
  {
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t s = g.mul(i, i);
      if (!seen[s]) {
        seen[s] = true;
        sq.push_back(s);
      }
    }
  }
  std::vector<bool> in_h(n, false);
  std::vector<std::size_t> h{0};
  in_h[0] = true;
  for (std::size_t qi = 0; qi < h.size(); ++qi)
    for (std::size_t s : sq) {
      std::size_t y = g.mul(h[qi], s);
      if (!in_h[y]) {
        in_h[y] = true;
        h.push_back(y);
      }
    }

  // Colour cosets of H, in element order.
  constexpr std::size_t kUnset = (std::size_t)-1;
  std::vector<std::size_t> colour(n, kUnset);
  std::vector<std::size_t> rep;
  for (std::size_t i = 0; i < n; ++i) {
    if (colour[i] != kUnset) continue;
    std::size_t c = rep.size();
    rep.push_back(i);
    for (std::size_t x : h) colour[g.mul(i, x)] = c;
  }

  // G/G^2 is an F2 space; assign coordinates by growing a basis.
  std::size_t m = rep.size();
  std::vector<std::uint32_t> q_coord(m, 0);
  std::vector<bool> reached(m, false);
  reached[colour[0]] = true;
  std::vector<std::size_t> span{colour[0]};
  int rank = 0;
  for (std::size_t c = 0; c < m; ++c) {
    if (reached[c]) continue;
    std::uint32_t bit = 1u << rank;
    ++rank;
    std::size_t old = span.size();
    for (std::size_t k = 0; k < old; ++k) {
      std::size_t sum = colour[g.mul(rep[span[k]], rep[c])];
      q_coord[sum] = q_coord[span[k]] ^ bit;
      reached[sum] = true;
      span.push_back(sum);
    }
  }

  TwoTorsionQuotient out;
  out.rank = rank;
  out.coords.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.coords[i] = q_coord[colour[i]];
  return out;
}

std::vector<std::vector<std::uint8_t>> f2_characters(const MatrixGroup& g) {
  TwoTorsionQuotient q = two_torsion_quotient(g);
  std::vector<std::vector<std::uint8_t>> out;
  for (std::uint32_t mask = 0; mask < (1u << q.rank); ++mask) {
    std::vector<std::uint8_t> chi(g.order());
    for (std::size_t i = 0; i < g.order(); ++i)
      chi[i] = (std::uint8_t)(std::popcount(mask & q.coords[i]) & 1);
    out.push_back(std::move(chi));
  }
  return out;
}

}  // namespace twistlab::gflinalg
