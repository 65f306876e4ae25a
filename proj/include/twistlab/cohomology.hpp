#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "twistlab/gflinalg.hpp"

namespace twistlab::cohomology {

using gflinalg::FpMatrix;
using gflinalg::FpVector;
using gflinalg::MatrixGroup;

/// A finite G-module: an F_p space with one action matrix per group
/// element. Actions are propagated from generator images along the group's
/// BFS order and the homomorphism property is verified on every
/// (element, generator) pair, which pins it on the whole group.
class GroupModule {
 public:
  static GroupModule standard(std::shared_ptr<const MatrixGroup> g);
  static GroupModule trivial(std::shared_ptr<const MatrixGroup> g, int p, int dim);
  static GroupModule from_generator_images(std::shared_ptr<const MatrixGroup> g, int p,
                                           int dim, std::vector<FpMatrix> images);

  const MatrixGroup& group() const { return *group_; }
  std::shared_ptr<const MatrixGroup> group_ptr() const { return group_; }
  int p() const { return p_; }
  int dim() const { return dim_; }
  const FpMatrix& action(std::size_t elem) const { return act_[elem]; }

  /// dim of the invariant subspace M^G.
  int invariants_dim() const;

 private:
  GroupModule(std::shared_ptr<const MatrixGroup> g, int p, int dim,
              std::vector<FpMatrix> act);
  std::shared_ptr<const MatrixGroup> group_;
  int p_, dim_;
  std::vector<FpMatrix> act_;
};

/// i-cochain on G with values in a module, stored as a dense table keyed
/// by element index tuples in the group's closure order. Degrees 0..3.
class Cochain {
 public:
  Cochain(int degree, std::shared_ptr<const GroupModule> module);

  int degree() const { return degree_; }
  const GroupModule& module() const { return *module_; }
  std::shared_ptr<const GroupModule> module_ptr() const { return module_; }

  const FpVector& at(std::initializer_list<std::size_t> args) const;
  FpVector& at(std::initializer_list<std::size_t> args);
  const FpVector& at_flat(std::size_t flat) const { return values_[flat]; }
  FpVector& at_flat(std::size_t flat) { return values_[flat]; }
  std::size_t table_size() const { return values_.size(); }

  bool is_zero() const;
  bool operator==(const Cochain& o) const;
  Cochain operator+(const Cochain& o) const;

 private:
  int degree_;
  std::shared_ptr<const GroupModule> module_;
  std::vector<FpVector> values_;
};

/// Standard inhomogeneous differential; input degree <= 2.
Cochain differential(const Cochain& f);

/// Is f a cocycle (df = 0)? For degree 1 this checks only
/// (element, generator) pairs, which suffices.
bool is_cocycle(const Cochain& f);

using Bilinear = std::function<FpVector(const FpVector&, const FpVector&)>;

/// Cochain-level cup product (a cup b)(g_1..g_{i+j}) =
/// pairing(a(g_1..g_i), (g_1...g_i) b(g_{i+1}..g_{i+j})); i + j <= 3.
Cochain cup(const Cochain& a, const Cochain& b, std::shared_ptr<const GroupModule> target,
            const Bilinear& pairing);

/// For a degree-1 cocycle f: some m with dm = f, or nullopt. Throws if f is
/// not a cocycle.
std::optional<FpVector> is_coboundary(const Cochain& f);

/// For a degree-2 cocycle a: some degree-1 g with dg = a, or nullopt.
std::optional<Cochain> two_coboundary_preimage(const Cochain& a);

/// dim H^1(G, M) by generator propagation: candidate generator values are
/// extended along the Cayley BFS with f(xg) = f(x) + x f(g) and rejected on
/// inconsistency. Candidate space is p^(dim * #generators).
int h1_dim(const GroupModule& m, std::size_t group_cap = 10'000);

/// Same dimension by full linear algebra on C^1 (the reference route;
/// meant for |G| <= 24).
int h1_dim_direct(const GroupModule& m);

/// Central extension E_a of G by M (trivial action) attached to a 2-cocycle
/// a, with law (g,m)(g',m') = (gg', m+m'+a(g,g')).
class CentralExtension {
 public:
  explicit CentralExtension(std::shared_ptr<const Cochain> two_cocycle);
  const Cochain& cocycle() const { return *a_; }
  const GroupModule& module() const { return a_->module(); }

  struct Element {
    std::size_t g;
    FpVector m;
    bool operator==(const Element&) const = default;
  };

  Element identity() const;
  /// Image of m under the section M -> E_a, m -> (1, m - a(1,1)).
  Element embed(const FpVector& m) const;
  Element multiply(const Element& x, const Element& y) const;

 private:
  std::shared_ptr<const Cochain> a_;
};

}  // namespace twistlab::cohomology
