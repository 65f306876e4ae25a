#include "twistlab/cohomology.hpp"

#include <cmath>

#include "twistlab/errors.hpp"

namespace twistlab::cohomology {

namespace {

constexpr std::size_t kTableCap = 200'000'000;  // bytes of cochain table
constexpr std::size_t kCandidateCap = 1'000'000;

std::size_t pow_size(std::size_t base, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

GroupModule::GroupModule(std::shared_ptr<const MatrixGroup> g, int p, int dim,
                         std::vector<FpMatrix> act)
    : group_(std::move(g)), p_(p), dim_(dim), act_(std::move(act)) {}

GroupModule GroupModule::standard(std::shared_ptr<const MatrixGroup> g) {
  std::vector<FpMatrix> act(g->elements().begin(), g->elements().end());
  int p = g->p(), dim = g->dim();
  return GroupModule(std::move(g), p, dim, std::move(act));
}

GroupModule GroupModule::trivial(std::shared_ptr<const MatrixGroup> g, int p, int dim) {
  std::vector<FpMatrix> act(g->order(), FpMatrix::identity(p, dim));
  return GroupModule(std::move(g), p, dim, std::move(act));
}

GroupModule GroupModule::from_generator_images(std::shared_ptr<const MatrixGroup> g, int p,
                                               int dim, std::vector<FpMatrix> images) {
  if (images.size() != g->generators().size())
    throw InputError("GroupModule: one image per generator required");
  for (const auto& m : images) {
    if (m.p() != p || m.rows() != dim || m.cols() != dim)
      throw InputError("GroupModule: image shape mismatch");
    if (!m.inverse()) throw InputError("GroupModule: image not invertible");
  }

  std::size_t n = g->order();
  std::vector<FpMatrix> act(n);
  std::vector<bool> done(n, false);
  act[0] = FpMatrix::identity(p, dim);
  done[0] = true;
  std::vector<std::size_t> order{0};
  for (std::size_t qi = 0; qi < order.size(); ++qi) {
    std::size_t x = order[qi];
    for (std::size_t k = 0; k < images.size(); ++k) {
      std::size_t y = g->mul(x, g->generator_indices()[k]);
      if (!done[y]) {
        act[y] = act[x] * images[k];
        done[y] = true;
        order.push_back(y);
      }
    }
  }
  for (bool d : done)
    if (!d) throw InputError("GroupModule: generators do not reach the whole group");
  // Full consistency on (element, generator) pairs pins the homomorphism.
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t k = 0; k < images.size(); ++k)
      if (!(act[g->mul(x, g->generator_indices()[k])] == act[x] * images[k]))
        throw InputError("GroupModule: action is not a homomorphism");
  return GroupModule(std::move(g), p, dim, std::move(act));
}

int GroupModule::invariants_dim() const {
  // Stack (act(g) - I) over the generators.
  const auto& gi = group_->generator_indices();
  if (gi.empty()) return dim_;
  FpMatrix stacked(p_, (int)gi.size() * dim_, dim_);
  FpMatrix id = FpMatrix::identity(p_, dim_);
  for (std::size_t k = 0; k < gi.size(); ++k) {
    FpMatrix d = act_[gi[k]] - id;
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) stacked.set((int)k * dim_ + r, c, d.at(r, c));
  }
  return dim_ - gflinalg::rank(stacked);
}

Cochain::Cochain(int degree, std::shared_ptr<const GroupModule> module)
    : degree_(degree), module_(std::move(module)) {
  if (degree < 0 || degree > 3) throw InputError("Cochain: degree must be in 0..3");
  std::size_t n = module_->group().order();
  std::size_t entries = pow_size(n, degree);
  if (entries * (std::size_t)module_->dim() > kTableCap)
    throw SizeLimitError("Cochain: table too large");
  values_.assign(entries, FpVector(module_->p(), module_->dim()));
}

const FpVector& Cochain::at(std::initializer_list<std::size_t> args) const {
  return const_cast<Cochain*>(this)->at(args);
}

FpVector& Cochain::at(std::initializer_list<std::size_t> args) {
  if ((int)args.size() != degree_) throw InputError("Cochain: wrong arity");
  std::size_t n = module_->group().order();
  std::size_t flat = 0;
  for (std::size_t a : args) flat = flat * n + a;
  return values_[flat];
}

bool Cochain::is_zero() const {
  for (const auto& v : values_)
    if (!v.is_zero()) return false;
  return true;
}

bool Cochain::operator==(const Cochain& o) const {
  return degree_ == o.degree_ && values_ == o.values_;
}

Cochain Cochain::operator+(const Cochain& o) const {
  if (degree_ != o.degree_) throw InputError("Cochain: degree mismatch in +");
  Cochain out = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] = values_[i] + o.values_[i];
  return out;
}

Cochain differential(const Cochain& f) {
  const GroupModule& mod = f.module();
  const MatrixGroup& g = mod.group();
  std::size_t n = g.order();
  Cochain out(f.degree() + 1, f.module_ptr());
  switch (f.degree()) {
    case 0: {
      const FpVector& m = f.at({});
      for (std::size_t a = 0; a < n; ++a) out.at({a}) = mod.action(a).apply(m) - m;
      break;
    }
    case 1: {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          out.at({a, b}) = f.at({a}) + mod.action(a).apply(f.at({b})) - f.at({g.mul(a, b)});
      break;
    }
    case 2: {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c)
            out.at({a, b, c}) = mod.action(a).apply(f.at({b, c})) - f.at({g.mul(a, b), c}) +
                                f.at({a, g.mul(b, c)}) - f.at({a, b});
      break;
    }
    default:
      throw InputError("differential: unsupported degree");
  }
  return out;
}

bool is_cocycle(const Cochain& f) {
  const GroupModule& mod = f.module();
  const MatrixGroup& g = mod.group();
  if (f.degree() == 0) {
    const FpVector& m = f.at({});
    for (std::size_t gi : g.generator_indices())
      if (!(mod.action(gi).apply(m) == m)) return false;
    return true;
  }
  if (f.degree() == 1) {
    // f(xg) = f(x) + x f(g) on (element, generator) pairs extends to all
    // products by induction on word length.
    for (std::size_t x = 0; x < g.order(); ++x)
      for (std::size_t gi : g.generator_indices())
        if (!(f.at({g.mul(x, gi)}) == f.at({x}) + mod.action(x).apply(f.at({gi}))))
          return false;
    return true;
  }
  return differential(f).is_zero();
}

Cochain cup(const Cochain& a, const Cochain& b, std::shared_ptr<const GroupModule> target,
            const Bilinear& pairing) {
  int i = a.degree(), j = b.degree();
  if (i + j > 3) throw InputError("cup: degree overflow");
  const MatrixGroup& g = a.module().group();
  if (&g != &b.module().group() || &g != &target->group())
    throw InputError("cup: cochains on different groups");
  std::size_t n = g.order();

  // Spot-check equivariance of the pairing on generators and basis vectors.
  for (std::size_t gi : g.generator_indices()) {
    for (int bm = 0; bm < a.module().dim(); ++bm)
      for (int bn = 0; bn < b.module().dim(); ++bn) {
        FpVector em(a.module().p(), a.module().dim());
        em.e[bm] = 1;
        FpVector en(b.module().p(), b.module().dim());
        en.e[bn] = 1;
        FpVector lhs = pairing(a.module().action(gi).apply(em), b.module().action(gi).apply(en));
        FpVector rhs = target->action(gi).apply(pairing(em, en));
        if (!(lhs == rhs)) throw InputError("cup: pairing is not G-equivariant");
      }
  }

  Cochain out(i + j, target);
  std::vector<std::size_t> tuple(i + j, 0);
  std::size_t entries = pow_size(n, i + j);
  for (std::size_t flat = 0; flat < entries; ++flat) {
    std::size_t rem = flat;
    for (int k = i + j - 1; k >= 0; --k) {
      tuple[k] = rem % n;
      rem /= n;
    }
    std::size_t afl = 0, bfl = 0, prefix = g.identity_index();
    for (int k = 0; k < i; ++k) {
      afl = afl * n + tuple[k];
      prefix = g.mul(prefix, tuple[k]);
    }
    for (int k = i; k < i + j; ++k) bfl = bfl * n + tuple[k];
    out.at_flat(flat) =
        pairing(a.at_flat(afl), b.module().action(prefix).apply(b.at_flat(bfl)));
  }
  return out;
}

std::optional<FpVector> is_coboundary(const Cochain& f) {
  if (f.degree() != 1) throw InputError("is_coboundary: degree-1 cochain required");
  if (!is_cocycle(f)) throw InputError("is_coboundary: input is not a cocycle");
  const GroupModule& mod = f.module();
  const auto& gi = mod.group().generator_indices();
  int dim = mod.dim(), p = mod.p();
  if (gi.empty()) return FpVector(p, dim);  // trivial group: f = 0 = d0

  // Solve (act(g) - I) m = f(g) across the generators; a cocycle agreeing
  // with a coboundary on the generators agrees everywhere.
  FpMatrix stacked(p, (int)gi.size() * dim, dim);
  FpVector rhs(p, (int)gi.size() * dim);
  FpMatrix id = FpMatrix::identity(p, dim);
  for (std::size_t k = 0; k < gi.size(); ++k) {
    FpMatrix d = mod.action(gi[k]) - id;
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) stacked.set((int)k * dim + r, c, d.at(r, c));
      rhs.e[k * dim + r] = f.at({gi[k]}).e[r];
    }
  }
  return gflinalg::solve(stacked, rhs);
}

std::optional<Cochain> two_coboundary_preimage(const Cochain& a) {
  if (a.degree() != 2) throw InputError("two_coboundary_preimage: degree-2 cochain required");
  const GroupModule& mod = a.module();
  const MatrixGroup& g = mod.group();
  std::size_t n = g.order();
  int dim = mod.dim(), p = mod.p();
  // Unknowns: f(g) for every g. Equations: f(x) + x f(y) - f(xy) = a(x,y).
  std::size_t unknowns = n * (std::size_t)dim;
  FpMatrix sys(p, (int)(n * n * dim), (int)unknowns);
  FpVector rhs(p, (int)(n * n * dim));
  std::size_t row = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t xy = g.mul(x, y);
      const FpMatrix& ax = mod.action(x);
      for (int r = 0; r < dim; ++r) {
        sys.set((int)row + r, (int)(x * dim + r), sys.at((int)row + r, (int)(x * dim + r)) + 1);
        for (int c = 0; c < dim; ++c)
          sys.set((int)row + r, (int)(y * dim + c),
                  sys.at((int)row + r, (int)(y * dim + c)) + ax.at(r, c));
        sys.set((int)row + r, (int)(xy * dim + r),
                sys.at((int)row + r, (int)(xy * dim + r)) - 1);
        rhs.e[row + r] = a.at({x, y}).e[r];
      }
      row += dim;
    }
  auto sol = gflinalg::solve(sys, rhs);
  if (!sol) return std::nullopt;
  Cochain f(1, a.module_ptr());
  for (std::size_t x = 0; x < n; ++x)
    for (int r = 0; r < dim; ++r) f.at({x}).e[r] = sol->e[x * dim + r];
  return f;
}

namespace {

// Try to extend generator values to a full cocycle; nullopt on conflict.
bool propagates(const GroupModule& mod, const std::vector<FpVector>& gen_vals,
                const std::vector<std::vector<std::size_t>>& mulgen) {
  const MatrixGroup& g = mod.group();
  std::size_t n = g.order();
  std::vector<FpVector> f(n);
  std::vector<bool> done(n, false);
  f[0] = FpVector(mod.p(), mod.dim());
  done[0] = true;
  std::vector<std::size_t> order{0};
  for (std::size_t qi = 0; qi < order.size(); ++qi) {
    std::size_t x = order[qi];
    for (std::size_t k = 0; k < gen_vals.size(); ++k) {
      std::size_t y = mulgen[x][k];
      if (!done[y]) {
        f[y] = f[x] + mod.action(x).apply(gen_vals[k]);
        done[y] = true;
        order.push_back(y);
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t k = 0; k < gen_vals.size(); ++k)
      if (!(f[mulgen[x][k]] == f[x] + mod.action(x).apply(gen_vals[k]))) return false;
  return true;
}

}  // namespace

int h1_dim(const GroupModule& mod, std::size_t group_cap) {
  const MatrixGroup& g = mod.group();
  std::size_t n = g.order();
  if (n > group_cap) throw SizeLimitError("h1_dim: group exceeds cap");
  const auto& gi = g.generator_indices();
  int p = mod.p(), dim = mod.dim();

  if (gi.empty()) return 0;  // trivial group

  std::size_t cand_count = 1;
  for (std::size_t k = 0; k < gi.size() * (std::size_t)dim; ++k) {
    cand_count *= (std::size_t)p;
    if (cand_count > kCandidateCap) throw SizeLimitError("h1_dim: candidate space too large");
  }

  std::vector<std::vector<std::size_t>> mulgen(n, std::vector<std::size_t>(gi.size()));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t k = 0; k < gi.size(); ++k) mulgen[x][k] = g.mul(x, gi[k]);

  long long cocycles = 0;
  for (std::size_t cand = 0; cand < cand_count; ++cand) {
    std::vector<FpVector> vals(gi.size(), FpVector(p, dim));
    std::size_t rem = cand;
    for (std::size_t k = 0; k < gi.size(); ++k)
      for (int d = 0; d < dim; ++d) {
        vals[k].e[d] = (std::uint8_t)(rem % p);
        rem /= p;
      }
    if (propagates(mod, vals, mulgen)) ++cocycles;
  }

  int z1 = 0;
  while (pow_size((std::size_t)p, z1 + 1) <= (std::size_t)cocycles) ++z1;
  if (pow_size((std::size_t)p, z1) != (std::size_t)cocycles)
    throw std::logic_error("h1_dim: cocycle count is not a p-power");
  int b1 = dim - mod.invariants_dim();
  return z1 - b1;
}

int h1_dim_direct(const GroupModule& mod) {
  const MatrixGroup& g = mod.group();
  std::size_t n = g.order();
  int p = mod.p(), dim = mod.dim();
  std::size_t unknowns = n * (std::size_t)dim;
  FpMatrix sys(p, (int)(n * n * dim), (int)unknowns);
  std::size_t row = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t xy = g.mul(x, y);
      const FpMatrix& ax = mod.action(x);
      for (int r = 0; r < dim; ++r) {
        sys.set((int)row + r, (int)(x * dim + r), sys.at((int)row + r, (int)(x * dim + r)) + 1);
        for (int c = 0; c < dim; ++c)
          sys.set((int)row + r, (int)(y * dim + c),
                  sys.at((int)row + r, (int)(y * dim + c)) + ax.at(r, c));
        sys.set((int)row + r, (int)(xy * dim + r),
                sys.at((int)row + r, (int)(xy * dim + r)) - 1);
      }
      row += dim;
    }
  int z1 = (int)unknowns - gflinalg::rank(sys);
  int b1 = dim - mod.invariants_dim();
  return z1 - b1;
}

CentralExtension::CentralExtension(std::shared_ptr<const Cochain> two_cocycle)
    : a_(std::move(two_cocycle)) {
  if (a_->degree() != 2) throw InputError("CentralExtension: degree-2 cocycle required");
  const GroupModule& mod = a_->module();
  FpMatrix id = FpMatrix::identity(mod.p(), mod.dim());
  for (std::size_t gi : mod.group().generator_indices())
    if (!(mod.action(gi) == id))
      throw InputError("CentralExtension: module action must be trivial");
  std::size_t n = mod.group().order();
  if (n * n * n * (std::size_t)mod.dim() <= 1'000'000 && !differential(*a_).is_zero())
    throw InputError("CentralExtension: not a 2-cocycle");
}

CentralExtension::Element CentralExtension::identity() const {
  std::size_t one = a_->module().group().identity_index();
  FpVector z(a_->module().p(), a_->module().dim());
  return {one, z - a_->at({one, one})};
}

CentralExtension::Element CentralExtension::embed(const FpVector& m) const {
  std::size_t one = a_->module().group().identity_index();
  return {one, m - a_->at({one, one})};
}

CentralExtension::Element CentralExtension::multiply(const Element& x, const Element& y) const {
  const MatrixGroup& g = a_->module().group();
  return {g.mul(x.g, y.g), x.m + y.m + a_->at({x.g, y.g})};
}

}  // namespace twistlab::cohomology
