// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <numeric>
#include <random>

#include "twistlab/cohomology.hpp"
#include "twistlab/errors.hpp"
#include "twistlab/disparity.hpp"
#include "twistlab/galois.hpp"
#include "twistlab/json_io.hpp"
#include "twistlab/pollatsek.hpp"
#include "twistlab/quadform.hpp"

using namespace twistlab;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

struct Criterion {
  int number;
  const char* title;
  Clock::time_point start;
  long long cases = 0;
  bool ok = true;

  Criterion(int number, const char* title)
      : number(number), title(title), start(Clock::now()) {}

  void require(bool cond) {
    ++cases;
    if (!cond) ok = false;
  }
  void require(bool cond, long long case_count) {
    cases += case_count;
    if (!cond) ok = false;
  }

  ~Criterion() {
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("%s criterion %2d: %-58s (%lld cases, %.2fs)\n", ok ? "PASS" : "FAIL", number,
                title, cases, secs);
    if (!ok) ++g_failures;
  }
};

std::string data_path(const std::string& name) {
  return std::string(TWISTLAB_TEST_DATA_DIR) + "/" + name;
}

struct Sp4 {
  quadform::SymplecticSpace space;
  std::shared_ptr<const gflinalg::MatrixGroup> group;
  gflinalg::BitGroupTable table;
};

Sp4 make_sp4() {
  Sp4 s;
  s.space = quadform::standard_space(4);
  s.group =
      std::make_shared<const gflinalg::MatrixGroup>(quadform::symplectic_group(s.space));
  s.table = gflinalg::BitGroupTable::build(*s.group);
  return s;
}

galois::CycleType cycle_type_of(const std::vector<int>& perm) {
  int n = (int)perm.size();
  std::vector<bool> seen(n, false);
  galois::CycleType ct;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0, j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = perm[j];
      ++len;
    }
    ct.parts.push_back(len);
  }
  std::sort(ct.parts.begin(), ct.parts.end(), std::greater<>());
  return ct;
}

void criterion_1_dickson(const Sp4& sp) {
  Criterion c(1, "Dickson homomorphism on O(q), dim 4, all 16 refinements");
  auto stats = quadform::dickson_homomorphism_sweep(sp.space, sp.table);
  c.require(stats.failures == 0, stats.cases);
}

void criterion_2_pollatsek(const Sp4& sp) {
  Criterion c(2, "phi lands in O(qW), is a homomorphism, df = c cup c, f|O(q) = d");
  for (const auto& q : quadform::all_refinements(sp.space)) {
    auto ps = pollatsek::extend_space(sp.space, q);
    auto orth = pollatsek::phi_orthogonal_sweep(ps, sp.table);
    c.require(orth.failures == 0, orth.cases);
    auto hom = pollatsek::phi_homomorphism_sweep(ps, sp.table);
    c.require(hom.failures == 0, hom.cases);
    auto cob = pollatsek::coboundary_identity_sweep(ps, sp.table);
    c.require(cob.failures == 0 && cob.cases == 720LL * 720LL, cob.cases);
    auto restr = pollatsek::dickson_restriction_sweep(ps, sp.table);
    c.require(restr.failures == 0, restr.cases);
  }
}

void criterion_3_change_of_form(const Sp4& sp4) {
  Criterion c(3, "change-of-form identity at dims 2 and 4, all (q, v, sigma)");
  auto s2 = quadform::standard_space(2);
  auto t2 = gflinalg::BitGroupTable::build(quadform::symplectic_group(s2));
  auto a = pollatsek::change_of_form_sweep(s2, t2);
  c.require(a.failures == 0 && a.cases == 4LL * 4 * 6, a.cases);
  auto b = pollatsek::change_of_form_sweep(sp4.space, sp4.table);
  c.require(b.failures == 0 && b.cases == 16LL * 16 * 720, b.cases);
}

void criterion_4_h1(const Sp4& sp) {
  Criterion c(4, "H1(Sp4, F2^4) = 1, no invariant refinement, two-route H1");
  auto pair = gflinalg::find_generating_pair(sp.table);
  auto small = std::make_shared<const gflinalg::MatrixGroup>(
      2, 4,
      std::vector<gflinalg::FpMatrix>{sp.group->element(pair.first),
                                      sp.group->element(pair.second)});
  auto mod =
      std::make_shared<const cohomology::GroupModule>(cohomology::GroupModule::standard(small));
  c.require(cohomology::h1_dim(*mod) == 1);

  // no invariant refinement: c_q is never a coboundary
  for (const auto& q : quadform::all_refinements(sp.space)) {
    cohomology::Cochain cq(1, mod);
    for (std::size_t i = 0; i < small->order(); ++i)
      cq.at({i}) = gflinalg::from_bitvec(
          quadform::cocycle(q, gflinalg::to_bitmatrix(small->element(i))), 4);
    c.require(!cohomology::is_coboundary(cq).has_value());
  }

  // two-route agreement on groups of order <= 24
  using gflinalg::FpMatrix;
  std::vector<std::shared_ptr<const gflinalg::MatrixGroup>> battery;
  {
    FpMatrix swap(2, 2, 2), shear(2, 2, 2);
    swap.set(0, 1, 1);
    swap.set(1, 0, 1);
    shear.set(0, 0, 1);
    shear.set(0, 1, 1);
    shear.set(1, 1, 1);
    battery.push_back(
        std::make_shared<const gflinalg::MatrixGroup>(2, 2, std::vector<FpMatrix>{swap, shear}));
    battery.push_back(
        std::make_shared<const gflinalg::MatrixGroup>(2, 2, std::vector<FpMatrix>{swap}));
    FpMatrix rot(2, 2, 2);
    rot.set(0, 1, 1);
    rot.set(1, 0, 1);
    rot.set(1, 1, 1);
    battery.push_back(
        std::make_shared<const gflinalg::MatrixGroup>(2, 2, std::vector<FpMatrix>{rot}));
  }
  {
    FpMatrix neg(3, 1, 1);
    neg.set(0, 0, 2);
    battery.push_back(
        std::make_shared<const gflinalg::MatrixGroup>(3, 1, std::vector<FpMatrix>{neg}));
    FpMatrix a(3, 2, 2), b(3, 2, 2);
    a.set(0, 0, 1);
    a.set(0, 1, 1);
    a.set(1, 1, 1);
    b.set(0, 0, 1);
    b.set(1, 0, 1);
    b.set(1, 1, 1);
    battery.push_back(
        std::make_shared<const gflinalg::MatrixGroup>(3, 2, std::vector<FpMatrix>{a, b}));
  }
  for (const auto& grp : battery) {
    if (grp->order() > 24) {
      c.require(false);
      continue;
    }
    auto standard =
        std::make_shared<const cohomology::GroupModule>(cohomology::GroupModule::standard(grp));
    c.require(cohomology::h1_dim(*standard) == cohomology::h1_dim_direct(*standard));
    auto trivial = std::make_shared<const cohomology::GroupModule>(
        cohomology::GroupModule::trivial(grp, grp->p(), 1));
    c.require(cohomology::h1_dim(*trivial) == cohomology::h1_dim_direct(*trivial));
  }
}

void criterion_5_hyperelliptic() {
  Criterion c(5, "cycle-type formula equals the even-subsets model, S_5..S_8");
  for (int n = 5; n <= 8; ++n) {
    galois::JacobianTwoTorsionModel model(n);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    long long fails = 0, cases = 0;
    do {
      int lhs = galois::epsilon_from_cycle_type(cycle_type_of(perm), n);
      int rhs = gflinalg::fixed_space_dim(model.matrix_of(perm)) % 2 == 0 ? 1 : -1;
      if (lhs != rhs) ++fails;
      ++cases;
    } while (std::next_permutation(perm.begin(), perm.end()));
    c.require(fails == 0, cases);
  }
}

void criterion_6_theta(const Sp4& sp) {
  Criterion c(6, "theta surjectivity iff eps not a homomorphism, test battery");
  // S6 as the full symplectic image
  {
    auto gi = galois::hyperelliptic_rep(6);
    auto th = galois::theta_criterion(gi);
    c.require(th.generates && th.eps_not_hom);
  }
  // O(q) subgroups, both Arf classes
  for (gflinalg::BitVec mask : {(gflinalg::BitVec)0, (gflinalg::BitVec)0b0011}) {
    quadform::QuadraticRefinement q{sp.space, mask};
    auto oq = std::make_shared<const gflinalg::MatrixGroup>(
        quadform::orthogonal_group(q, *sp.group));
    auto th = galois::theta_criterion(galois::make_galois_image(2, oq));
    c.require(!th.generates && !th.eps_not_hom);
  }
  // cyclic subgroups
  for (std::size_t pick : {1, 7, 100, 350}) {
    auto grp = std::make_shared<const gflinalg::MatrixGroup>(
        2, 4, std::vector<gflinalg::FpMatrix>{sp.group->element(pick)});
    auto th = galois::theta_criterion(galois::make_galois_image(2, grp));
    c.require(th.generates == th.eps_not_hom);
  }
  // 100 random subgroups
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<gflinalg::FpMatrix> gens;
    int count = 1 + (int)(rng() % 3);
    for (int i = 0; i < count; ++i) gens.push_back(sp.group->element(rng() % sp.group->order()));
    auto grp = std::make_shared<const gflinalg::MatrixGroup>(2, 4, gens);
    auto th = galois::theta_criterion(galois::make_galois_image(2, grp));
    c.require(th.generates == th.eps_not_hom);
  }
}

void criterion_7_averaging() {
  Criterion c(7, "brute-force Gamma equals the product formula, 1000 random ledgers");
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<disparity::LocalPlaceDatum> places;
    int nplaces = 1 + (int)(rng() % 5);
    std::size_t gamma = 1;
    for (int i = 0; i < nplaces; ++i) {
      disparity::LocalPlaceDatum place{"v" + std::to_string(i),
                                       disparity::PlaceKind::nonarch_other,
                                       {{"1", 1, 0, 0, false}}};
      int extra = 1 + (int)(rng() % 9);
      if (gamma * (extra + 1) > 100000) break;
      gamma *= (std::size_t)(extra + 1);
      for (int ch = 0; ch < extra; ++ch)
        place.characters.push_back({"c", (rng() % 2) ? 1 : -1, (int)(rng() % 3),
                                    (int)(rng() % 2), true});
      places.push_back(std::move(place));
    }
    if (places.empty()) {
      places.push_back({"v", disparity::PlaceKind::nonarch_other, {{"1", 1, 0, 0, false}}});
    }
    auto stat = (trial % 3 == 0)   ? disparity::Statistic::selmer2
                : (trial % 3 == 1) ? disparity::Statistic::twoinf
                                   : disparity::Statistic::sha;
    auto parity = (rng() % 2) ? disparity::Parity::even : disparity::Parity::odd;
    Rational product(1);
    for (const auto& pl : places) product *= disparity::local_factor(pl, stat);
    product.canonicalize();
    c.require(disparity::brute_force_gamma(places, stat, parity, 100000) ==
              disparity::global_fraction(product, parity));
  }
}

void criterion_8_markov() {
  Criterion c(8, "Markov closed form equals exact powers; stepwise norm decay");
  for (int p : {3, 5})
    for (int r : {0, 1, 2})
      for (int eps : {1, -1}) {
        std::vector<std::vector<int>> rhos{std::vector<int>(r, 0)};
        if (r >= 1) {
          std::vector<int> e1(r, 0);
          e1[0] = 1;
          rhos.push_back(e1);
        }
        if (r >= 2) {
          std::vector<int> mixed(r, 0);
          mixed[0] = p - 1;
          mixed[1] = 1;
          rhos.push_back(mixed);
        }
        for (const auto& rho : rhos) {
          markov::FrobeniusClassDatum cls{"c", eps, rho, Rational(1)};
          markov::RatMatrix m1 = markov::markov_matrix(cls, p, r);
          markov::RatMatrix iter = m1;
          for (long m = 1; m <= 20; ++m) {
            if (m > 1) iter = iter * m1;
            c.require(markov::markov_power_closed_form(cls, p, r, m) == iter);
          }
        }
      }

  std::vector<markov::FrobeniusClassDatum> classes{
      {"a", 1, {1}, make_rational(1, 4)},
      {"b", -1, {2}, make_rational(1, 2)},
      {"c", -1, {0}, make_rational(1, 4)},
  };
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto result = markov::markov_run(markov::initial_state(3, 1), classes, 40, seed);
    c.require(result.decay_bound_held);
  }
}

void criterion_9_example_numerics() {
  Criterion c(9, "Example numerics: discriminant, 19/32 and 13/32, 5 ramified");
  auto f = galois::parse_polynomial("x^6+x^4+x+3");
  c.require(galois::discriminant(f) == mpz_class(-5) * 2670719);

  auto in = json_io::load_disparity_input(data_path("example_kappa.json"));
  auto rep = disparity::report(in.places, in.p, in.statistic, in.base_parity);
  c.require(rep.fraction_even == make_rational(19, 32));
  c.require(rep.fraction_odd == make_rational(13, 32));
  c.require(rep.oracle_ran && rep.oracle_agrees);
  c.require(to_frac_string(rep.places[0].factor) == "1/1");
  c.require(to_frac_string(rep.places[1].factor) == "3/4");
  c.require(to_frac_string(rep.places[2].factor) == "-1/2");
  c.require(to_frac_string(rep.places[3].factor) == "1/2");

  galois::FrobeniusSampler sampler(f);
  c.require(sampler.sample(5).ramified);

  std::printf("     note: this example is often quoted with product 3/16; the listed local\n"
              "     values multiply to %s, and only that sign gives 19/32 at odd parity.\n",
              to_frac_string(rep.product).c_str());
}

void criterion_10_closed_forms() {
  Criterion c(10, "closed-form local terms match the transcribed truth table");
  using disparity::PlaceKind;
  for (int dim_t = 0; dim_t <= 4; ++dim_t) {
    c.require(disparity::norm_cokernel_dim(PlaceKind::nonarch_good_odd, false, dim_t, 2, 2) == 0);
    c.require(disparity::norm_cokernel_dim(PlaceKind::nonarch_good_odd, true, dim_t, 2, 2) ==
              dim_t);
    c.require(disparity::norm_cokernel_dim(PlaceKind::archimedean_complex, true, dim_t, 2, 2) ==
              0);
    c.require(disparity::norm_cokernel_dim(PlaceKind::archimedean_complex, false, dim_t, 2, 2) ==
              0);
    for (int g = 0; g <= dim_t; ++g)
      c.require(disparity::norm_cokernel_dim(PlaceKind::archimedean_real, true, dim_t, g, 2) ==
                dim_t - g);
    c.require(disparity::norm_cokernel_dim(PlaceKind::archimedean_real, false, dim_t, 2, 2) == 0);

    Rational half = make_rational(1, 2);
    Rational expect = (dim_t % 2) ? half : Rational(0);
    for (bool ram : {false, true}) {
      c.require(disparity::sha_local_term(PlaceKind::nonarch_good_odd, true, ram, dim_t) ==
                Rational(0));
      c.require(disparity::sha_local_term(PlaceKind::archimedean_complex, false, ram, dim_t) ==
                Rational(0));
    }
    c.require(disparity::sha_local_term(PlaceKind::nonarch_good_odd, false, false, dim_t) ==
              Rational(0));
    c.require(disparity::sha_local_term(PlaceKind::nonarch_good_odd, false, true, dim_t) ==
              expect);
    c.require(disparity::sha_local_term(PlaceKind::archimedean_real, false, true, dim_t) ==
              expect);
  }
  bool signalled = false;
  try {
    disparity::norm_cokernel_dim(PlaceKind::nonarch_other, true, 1, 1, 2);
  } catch (const ClosedFormUnavailable&) {
    signalled = true;
  }
  c.require(signalled);
  signalled = false;
  try {
    disparity::sha_local_term(PlaceKind::nonarch_other, false, true, 1);
  } catch (const ClosedFormUnavailable&) {
    signalled = true;
  }
  c.require(signalled);
}

}  // namespace

int main() {
  Sp4 sp = make_sp4();
  criterion_1_dickson(sp);
  criterion_2_pollatsek(sp);
  criterion_3_change_of_form(sp);
  criterion_4_h1(sp);
  criterion_5_hyperelliptic();
  criterion_6_theta(sp);
  criterion_7_averaging();
  criterion_8_markov();
  criterion_9_example_numerics();
  criterion_10_closed_forms();

  if (g_failures) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
