#include "twistlab/galois.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "twistlab/errors.hpp"

namespace twistlab::galois {

using gflinalg::BitVec;

GaloisImage make_galois_image(int p, std::shared_ptr<const MatrixGroup> group,
                              std::optional<FpMatrix> gram) {
  if (group->p() != p) throw InputError("GaloisImage: group modulus mismatch");
  GaloisImage gi{p, std::move(group), std::move(gram), {}};
  std::size_t n = gi.group->order();
  gi.multiplier.assign(n, 1);
  if (p == 2) return gi;

  if (!gi.gram) throw InputError("GaloisImage: gram required for p > 2");
  const FpMatrix& g = *gi.gram;
  int dim = gi.group->dim();
  if (g.rows() != dim || g.cols() != dim || g.p() != p)
    throw InputError("GaloisImage: gram shape mismatch");

  auto pair = [&](const FpMatrix& m, int i, int j) {
    // <m e_i, m e_j> = (col_i)^T G (col_j)
    int acc = 0;
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) acc += m.at(r, i) * g.at(r, c) % p * m.at(c, j);
    return acc % p;
  };

  int bi = -1, bj = -1;
  for (int i = 0; i < dim && bi < 0; ++i)
    for (int j = 0; j < dim; ++j)
      if (g.at(i, j) != 0) {
        bi = i;
        bj = j;
        break;
      }
  if (bi < 0) throw InputError("GaloisImage: zero gram");

  auto inv_mod = [&](int a) {
    int r = 1, b = a % p, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };

  int base_inv = inv_mod(g.at(bi, bj));
  for (std::size_t k = 0; k < n; ++k) {
    const FpMatrix& m = gi.group->element(k);
    int lambda = pair(m, bi, bj) * base_inv % p;
    if (lambda == 0) throw InputError("GaloisImage: element does not scale the pairing");
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        if (pair(m, i, j) != lambda * g.at(i, j) % p)
          throw InputError("GaloisImage: element does not scale the pairing");
    gi.multiplier[k] = lambda;
  }
  return gi;
}

int epsilon(const GaloisImage& gi, std::size_t elem) {
  return (gflinalg::fixed_subspace_dim(gi.group->element(elem)) % 2 == 0) ? 1 : -1;
}

namespace {

std::vector<std::int8_t> epsilon_table(const GaloisImage& gi) {
  std::vector<std::int8_t> eps(gi.group->order());
  for (std::size_t i = 0; i < eps.size(); ++i) eps[i] = (std::int8_t)epsilon(gi, i);
  return eps;
}

// First pair violating multiplicativity, if any.
std::optional<std::pair<std::size_t, std::size_t>> hom_violation(
    const MatrixGroup& g, const std::vector<std::int8_t>& eps) {
  for (std::size_t i = 0; i < g.order(); ++i)
    for (std::size_t j = 0; j < g.order(); ++j)
      if (eps[g.mul(i, j)] != eps[i] * eps[j]) return std::make_pair(i, j);
  return std::nullopt;
}

}  // namespace

EpsilonClassification classify(const GaloisImage& gi) {
  const MatrixGroup& g = *gi.group;
  std::vector<std::int8_t> eps = epsilon_table(gi);

  if (gi.p == 2) {
    if (auto w = hom_violation(g, eps))
      return {EpsKind::NotHomomorphism, w, std::nullopt, {}};
    EpsilonClassification out;
    out.kind = EpsKind::HomomorphismTrivial;
    for (std::size_t i = 0; i < g.order(); ++i)
      if (eps[i] == 1) out.kernel.push_back(i);
    if (out.kernel.size() != g.order()) {
      out.kind = EpsKind::HomomorphismNontrivial;
      if (out.kernel.size() * 2 != g.order())
        throw std::logic_error("classify: homomorphism kernel not of index 2");
    } else {
      out.kernel.clear();
    }
    return out;
  }

  for (std::size_t i = 0; i < g.order(); ++i)
    if (gi.multiplier[i] == 1 && eps[i] == -1)
      return {EpsKind::NontrivialOnSp, std::nullopt, i, {}};
  return {EpsKind::TrivialOnSp, std::nullopt, std::nullopt, {}};
}

int CycleType::sum() const { return std::accumulate(parts.begin(), parts.end(), 0); }

std::string CycleType::dashed() const {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += "-";
    out += std::to_string(parts[i]);
  }
  return out;
}

int sign_of_cycle_type(const CycleType& ct) {
  int t = 0;
  for (int d : ct.parts) t += d - 1;
  return (t % 2 == 0) ? 1 : -1;
}

int epsilon_from_cycle_type(const CycleType& ct, int n) {
  if (ct.sum() != n) throw InputError("epsilon_from_cycle_type: parts do not sum to n");
  int sgn = sign_of_cycle_type(ct);
  bool all_even = std::all_of(ct.parts.begin(), ct.parts.end(), [](int d) { return d % 2 == 0; });
  if (all_even && n % 4 == 2) return -sgn;
  return sgn;
}

JacobianTwoTorsionModel::JacobianTwoTorsionModel(int n) : n_(n) {
  if (n < 5 || n > 16) throw InputError("JacobianTwoTorsionModel: need 5 <= n <= 16");
  int target = (n % 2 == 0) ? n - 2 : n - 1;
  std::uint32_t full = (n % 2 == 0) ? ((1u << n) - 1) : 0;

  // First `target` even subsets, independent modulo the full set, in
  // increasing mask order. Reduction basis over F2 on indicator vectors.
  std::vector<std::uint32_t> reduced;
  if (full) reduced.push_back(full);
  auto reduce = [&](std::uint32_t v) {
    for (std::uint32_t b : reduced) {
      std::uint32_t piv = 1u << (31 - std::countl_zero(b));
      if (v & piv) v ^= b;
    }
    return v;
  };
  for (std::uint32_t mask = 1; mask < (1u << n) && (int)basis_.size() < target; ++mask) {
    if (std::popcount(mask) % 2 != 0) continue;
    std::uint32_t r = reduce(mask);
    if (!r) continue;
    basis_.push_back(mask);
    reduced.push_back(r);
    std::sort(reduced.begin(), reduced.end(), std::greater<>());
  }
  if ((int)basis_.size() != target)
    throw std::logic_error("JacobianTwoTorsionModel: basis construction failed");

  BitMatrix gram(target, target);
  for (int i = 0; i < target; ++i)
    for (int j = 0; j < target; ++j)
      gram.set(i, j, std::popcount(basis_[i] & basis_[j]) % 2 != 0);
  space_ = quadform::SymplecticSpace(target, gram);

  coord_system_ = BitMatrix(n, target + (full ? 1 : 0));
  for (int j = 0; j < target; ++j) coord_system_.set_column(j, basis_[j]);
  if (full) coord_system_.set_column(target, full);
}

BitMatrix JacobianTwoTorsionModel::matrix_of(const std::vector<int>& perm) const {
  if ((int)perm.size() != n_) throw InputError("matrix_of: permutation size mismatch");
  int d = dim();
  BitMatrix out(d, d);
  for (int j = 0; j < d; ++j) {
    std::uint32_t image = 0;
    std::uint32_t s = basis_[j];
    while (s) {
      int i = std::countr_zero(s);
      image |= 1u << perm[i];
      s &= s - 1;
    }
    auto coords = gflinalg::solve(coord_system_, (BitVec)image);
    if (!coords) throw std::logic_error("matrix_of: image not in span");
    out.set_column(j, *coords & ((BitVec(1) << d) - 1));
  }
  return out;
}

GaloisImage hyperelliptic_rep(int n, std::size_t cap) {
  JacobianTwoTorsionModel model(n);
  std::vector<int> transposition(n), cycle(n);
  std::iota(transposition.begin(), transposition.end(), 0);
  std::swap(transposition[0], transposition[1]);
  for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;

  std::vector<FpMatrix> gens{gflinalg::from_bitmatrix(model.matrix_of(transposition)),
                             gflinalg::from_bitmatrix(model.matrix_of(cycle))};
  auto group = std::make_shared<const MatrixGroup>(2, model.dim(), std::move(gens),
                                                   std::vector<std::string>{"(0 1)", "cycle"},
                                                   cap);
  return make_galois_image(2, std::move(group));
}

ThetaResult theta_criterion(const GaloisImage& gi) {
  if (gi.p != 2) throw InputError("theta_criterion: p must be 2");
  const MatrixGroup& g = *gi.group;
  std::vector<std::int8_t> eps = epsilon_table(gi);

  gflinalg::TwoTorsionQuotient q = gflinalg::two_torsion_quotient(g);

  // S = {(g mod G^2, eps(g))} lives in an F2 space of dimension rank+1;
  // it generates the full product iff its span has that dimension.
  std::vector<std::uint32_t> basis;
  auto insert = [&](std::uint32_t v) {
    for (std::uint32_t b : basis) {
      std::uint32_t piv = 1u << (31 - std::countl_zero(b));
      if (v & piv) v ^= b;
    }
    if (v) {
      basis.push_back(v);
      std::sort(basis.begin(), basis.end(), std::greater<>());
    }
  };
  for (std::size_t i = 0; i < g.order(); ++i) {
    std::uint32_t v = q.coords[i];
    if (eps[i] == -1) v |= 1u << q.rank;
    insert(v);
  }
  bool generates = (int)basis.size() == q.rank + 1;
  bool not_hom = hom_violation(g, eps).has_value();
  return {generates, not_hom};
}

// ---------------------------------------------------------------------------
// Factorization of integer polynomials modulo an odd prime.

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

u64 powmod_u64(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Coefficients ascending, normalized (no leading zeros).
struct Poly {
  std::vector<u64> c;
  u64 p;

  int deg() const { return (int)c.size() - 1; }
  bool zero() const { return c.empty(); }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
};

Poly x_poly(u64 p) { return Poly{{0, 1}, p}; }

Poly sub(const Poly& a, const Poly& b) {
  Poly r{std::vector<u64>(std::max(a.c.size(), b.c.size()), 0), a.p};
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    u64 av = i < a.c.size() ? a.c[i] : 0;
    u64 bv = i < b.c.size() ? b.c[i] : 0;
    r.c[i] = (av + a.p - bv) % a.p;
  }
  r.trim();
  return r;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.zero() || b.zero()) return Poly{{}, a.p};
  Poly r{std::vector<u64>(a.c.size() + b.c.size() - 1, 0), a.p};
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (!a.c[i]) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = (r.c[i + j] + mulmod(a.c[i], b.c[j], a.p)) % a.p;
  }
  r.trim();
  return r;
}

Poly rem(Poly a, const Poly& b) {
  u64 p = a.p;
  u64 lead_inv = powmod_u64(b.c.back(), p - 2, p);
  while (!a.zero() && a.deg() >= b.deg()) {
    u64 f = mulmod(a.c.back(), lead_inv, p);
    int shift = a.deg() - b.deg();
    for (std::size_t i = 0; i < b.c.size(); ++i) {
      u64 sub_v = mulmod(f, b.c[i], p);
      a.c[i + shift] = (a.c[i + shift] + p - sub_v) % p;
    }
    a.trim();
  }
  return a;
}

Poly monic(Poly a) {
  if (a.zero()) return a;
  u64 inv = powmod_u64(a.c.back(), a.p - 2, a.p);
  for (u64& v : a.c) v = mulmod(v, inv, a.p);
  return a;
}

Poly gcd(Poly a, Poly b) {
  while (!b.zero()) {
    Poly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a));
}

Poly derivative(const Poly& a) {
  Poly r{{}, a.p};
  for (std::size_t i = 1; i < a.c.size(); ++i) r.c.push_back(mulmod(a.c[i], i % a.p, a.p));
  r.trim();
  return r;
}

Poly mulmod_poly(const Poly& a, const Poly& b, const Poly& m) { return rem(mul(a, b), m); }

Poly powmod_poly(Poly base, const mpz_class& e, const Poly& m) {
  Poly r{{1}, base.p};
  base = rem(std::move(base), m);
  mpz_class k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = mulmod_poly(r, base, m);
    base = mulmod_poly(base, base, m);
    k >>= 1;
  }
  return r;
}

// Exact quotient a / b (b must divide a).
Poly divide_exact(const Poly& a, const Poly& b) {
  Poly q{{}, a.p};
  Poly r = a;
  u64 inv = powmod_u64(b.c.back(), a.p - 2, a.p);
  q.c.assign(r.deg() - b.deg() + 1, 0);
  while (!r.zero() && r.deg() >= b.deg()) {
    u64 fac = mulmod(r.c.back(), inv, a.p);
    int shift = r.deg() - b.deg();
    q.c[shift] = fac;
    for (std::size_t i = 0; i < b.c.size(); ++i) {
      u64 sub_v = mulmod(fac, b.c[i], a.p);
      r.c[i + shift] = (r.c[i + shift] + a.p - sub_v) % a.p;
    }
    r.trim();
  }
  q.trim();
  return q;
}

// Distinct-degree decomposition of a squarefree monic poly: (degree, product
// of all irreducible factors of that degree).
std::vector<std::pair<int, Poly>> distinct_degree(Poly f) {
  std::vector<std::pair<int, Poly>> parts;
  Poly h = x_poly(f.p);  // x^(p^d) mod f, advanced one Frobenius per round
  int d = 0;
  while (f.deg() > 0) {
    ++d;
    if (2 * d > f.deg()) {
      parts.emplace_back(f.deg(), f);
      break;
    }
    h = powmod_poly(h, mpz_class((unsigned long)f.p), f);
    Poly g = gcd(sub(h, x_poly(f.p)), f);
    if (g.deg() > 0) {
      parts.emplace_back(d, g);
      f = monic(divide_exact(f, g));
      h = rem(h, f.deg() > 0 ? f : Poly{{1}, f.p});
    }
  }
  return parts;
}

// Cantor-Zassenhaus split of a monic product of irreducibles of degree d.
void equal_degree(const Poly& f, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (f.deg() == d) {
    out.push_back(f);
    return;
  }
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), (unsigned long)f.p, (unsigned long)d);
  mpz_class e = (q - 1) / 2;
  while (true) {
    Poly r{std::vector<u64>(f.deg(), 0), f.p};
    for (u64& v : r.c) v = rng() % f.p;
    r.trim();
    if (r.deg() < 1) continue;
    Poly g = gcd(r, f);
    if (g.deg() == 0) {
      Poly t = powmod_poly(r, e, f);
      if (t.zero()) continue;
      t.c.resize(std::max<std::size_t>(t.c.size(), 1), 0);
      t.c[0] = (t.c[0] + f.p - 1) % f.p;
      t.trim();
      g = gcd(t, f);
    }
    if (g.deg() > 0 && g.deg() < f.deg()) {
      equal_degree(monic(g), d, rng, out);
      equal_degree(monic(divide_exact(f, g)), d, rng, out);
      return;
    }
  }
}

// All irreducible degrees of a monic f, with multiplicity. Uses
// gcd(f, f') = product of p_i^(e_i - 1), so f / gcd carries each factor
// once and the gcd carries the remaining multiplicities.
void factor_degrees(Poly f, std::mt19937_64& rng, int multiplicity, std::vector<int>& out) {
  if (f.deg() <= 0) return;
  Poly der = derivative(f);
  if (der.zero()) {
    // f = g(x^p); every factor of g repeats p times.
    Poly g{{}, f.p};
    for (std::size_t i = 0; i < f.c.size(); i += (std::size_t)f.p) g.c.push_back(f.c[i]);
    g.trim();
    factor_degrees(monic(g), rng, multiplicity * (int)f.p, out);
    return;
  }
  Poly rep = gcd(f, der);
  Poly squarefree = rep.deg() > 0 ? monic(divide_exact(f, rep)) : f;
  for (auto& [d, part] : distinct_degree(squarefree)) {
    std::vector<Poly> irr;
    equal_degree(part, d, rng, irr);
    for (auto& piece : irr)
      for (int k = 0; k < multiplicity; ++k) out.push_back(piece.deg());
  }
  if (rep.deg() > 0) factor_degrees(std::move(rep), rng, multiplicity, out);
}

Poly reduce_mod(const IntPolynomial& f, u64 p) {
  Poly r{{}, p};
  for (const mpz_class& c : f.coeffs()) {
    mpz_class m = c % (unsigned long)p;
    if (m < 0) m += (unsigned long)p;
    r.c.push_back(m.get_ui());
  }
  r.trim();
  return r;
}

u64 mix_seed(const IntPolynomial& f, u64 ell, u64 seed) {
  u64 h = 0x9e3779b97f4a7c15ULL ^ seed;
  for (const mpz_class& c : f.coeffs()) {
    h ^= (u64)mpz_fdiv_ui(c.get_mpz_t(), 0xffffffffffffffc5ULL);
    h *= 0x100000001b3ULL;
  }
  h ^= ell;
  h *= 0x100000001b3ULL;
  return h;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod_u64(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

CycleType factor_degrees_mod_p(const IntPolynomial& f, std::uint64_t ell, std::uint64_t seed) {
  Poly fp = monic(reduce_mod(f, ell));
  if (fp.deg() < 1) throw InputError("factor_degrees_mod_p: polynomial reduces to a constant");
  std::mt19937_64 rng(mix_seed(f, ell, seed));
  CycleType ct;
  factor_degrees(std::move(fp), rng, 1, ct.parts);
  std::sort(ct.parts.begin(), ct.parts.end(), std::greater<>());
  return ct;
}

FrobeniusSampler::FrobeniusSampler(IntPolynomial f, std::uint64_t seed)
    : f_(std::move(f)), seed_(seed) {
  if (f_.degree() < 2) throw InputError("FrobeniusSampler: degree must be at least 2");
  disc_ = discriminant(f_);
}

FrobeniusSample FrobeniusSampler::sample(std::uint64_t ell) const {
  if (ell % 2 == 0) throw InputError("sample: ell must be odd");
  if (!is_prime_u64(ell)) throw InputError("sample: ell must be prime");
  if (mpz_fdiv_ui(f_.lead().get_mpz_t(), ell) == 0)
    throw InputError("sample: ell divides the leading coefficient");
  if (mpz_fdiv_ui(disc_.get_mpz_t(), ell) == 0) return {ell, true, {}};
  return {ell, false, factor_degrees_mod_p(f_, ell, seed_)};
}

std::vector<FrobeniusSample> FrobeniusSampler::sweep(std::uint64_t lo, std::uint64_t hi,
                                                     Exec exec) const {
  if (hi >= (1ull << 32)) throw InputError("sweep: bounds must be below 2^32");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t ell = std::max<std::uint64_t>(lo, 3) | 1; ell <= hi; ell += 2)
    if (is_prime_u64(ell) && mpz_fdiv_ui(f_.lead().get_mpz_t(), ell) != 0) primes.push_back(ell);

  std::vector<FrobeniusSample> out(primes.size());
  const long long n = (long long)primes.size();
  bool parallel = exec == Exec::parallel;
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
  for (long long i = 0; i < n; ++i) out[i] = sample(primes[i]);
  return out;
}

std::vector<FrobeniusSample> FrobeniusSampler::sweep_serial(std::uint64_t lo,
                                                            std::uint64_t hi) const {
  return sweep(lo, hi, Exec::serial);
}

FrobeniusSample frobenius_cycle_type(const IntPolynomial& f, std::uint64_t ell,
                                     std::uint64_t seed) {
  return FrobeniusSampler(f, seed).sample(ell);
}

}  // namespace twistlab::galois
