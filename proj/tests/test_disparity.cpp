#include <doctest.h>

#include <random>

#include "twistlab/disparity.hpp"
#include "twistlab/errors.hpp"

using namespace twistlab;
using namespace twistlab::disparity;

namespace {

LocalCharacterDatum trivial_char() { return {"1", 1, 0, 0, false}; }

LocalPlaceDatum place_with_values(const std::string& label, const std::vector<int>& omegas) {
  // Build a ledger whose selmer2 values are exactly `omegas` (first +1).
  LocalPlaceDatum place{label, PlaceKind::nonarch_other, {}};
  place.characters.push_back(trivial_char());
  for (std::size_t i = 1; i < omegas.size(); ++i) {
    LocalCharacterDatum c{"c" + std::to_string(i), 1, 0, 0, true};
    if (omegas[i] == -1) c.norm_cokernel_dim = 1;
    place.characters.push_back(c);
  }
  return place;
}

LocalPlaceDatum random_place(std::mt19937_64& rng, int max_chars) {
  LocalPlaceDatum place{"v", PlaceKind::nonarch_other, {trivial_char()}};
  int extra = 1 + (int)(rng() % (max_chars - 1));
  for (int i = 0; i < extra; ++i) {
    LocalCharacterDatum c;
    c.name = "c" + std::to_string(i);
    c.chi_delta = (rng() % 2) ? 1 : -1;
    c.norm_cokernel_dim = (int)(rng() % 3);
    c.sha_term_double = (int)(rng() % 2);
    c.ramified = true;
    place.characters.push_back(c);
  }
  return place;
}

}  // namespace

TEST_SUITE("disparity") {
  TEST_CASE("local_factor examples") {
    CHECK(local_factor(place_with_values("v", {1, 1, 1}), Statistic::selmer2) == Rational(1));
    CHECK(local_factor(place_with_values("v", {1, -1}), Statistic::selmer2) == Rational(0));

    // seven +1, one -1 out of eight characters -> 3/4
    LocalPlaceDatum two = place_with_values("2", {1, 1, 1, 1, 1, 1, 1, -1});
    CHECK(local_factor(two, Statistic::selmer2) == make_rational(3, 4));
    CHECK(local_factor(two, Statistic::twoinf) == make_rational(3, 4));
  }

  TEST_CASE("character_value formulas") {
    LocalCharacterDatum c{"c", -1, 3, 1, true};
    CHECK(character_value(c, Statistic::selmer2) == 1);   // -1 * (-1)^3
    CHECK(character_value(c, Statistic::twoinf) == 1);    // (-1)^(1+3)
    CHECK(character_value(c, Statistic::sha) == 1);       // -1 * (-1)^1
    c.chi_delta = 1;
    CHECK(character_value(c, Statistic::selmer2) == -1);
    CHECK(character_value(c, Statistic::sha) == -1);
  }

  TEST_CASE("global_fraction examples") {
    CHECK(global_fraction(Rational(1), Parity::even) == Rational(1));
    CHECK(global_fraction(make_rational(-3, 16), Parity::odd) == make_rational(19, 32));
    CHECK(global_fraction(Rational(0), Parity::even) == make_rational(1, 2));
    CHECK(global_fraction(Rational(1), Parity::odd) == Rational(0));
    CHECK_THROWS_AS(global_fraction(Rational(2), Parity::even), InputError);
  }

  TEST_CASE("brute force gamma examples") {
    // two places, each with values {+1, -1, -1}: (1 + 1/9)/2 = 5/9
    std::vector<LocalPlaceDatum> places{place_with_values("a", {1, -1, -1}),
                                        place_with_values("b", {1, -1, -1})};
    Rational brute = brute_force_gamma(places, Statistic::selmer2, Parity::even);
    CHECK(brute == make_rational(5, 9));
    Rational product = local_factor(places[0], Statistic::selmer2) *
                       local_factor(places[1], Statistic::selmer2);
    CHECK(brute == global_fraction(product, Parity::even));

    std::vector<LocalPlaceDatum> single{place_with_values("a", {1, 1, 1, 1})};
    CHECK(brute_force_gamma(single, Statistic::selmer2, Parity::even) == Rational(1));
  }

  TEST_CASE("worked kappa ledger gives 19/32 and 13/32") {
    std::vector<LocalPlaceDatum> places;
    places.push_back(place_with_values("infinity", {1, 1}));
    places.push_back(place_with_values("2", {1, 1, 1, 1, 1, 1, 1, -1}));
    places.push_back(place_with_values("5", {1, -1, -1, -1}));
    places.push_back(place_with_values("2670719", {1, 1, 1, -1}));
    auto rep = report(places, 2, Statistic::twoinf, Parity::odd);
    CHECK(rep.product == make_rational(-3, 16));
    CHECK(rep.fraction_even == make_rational(19, 32));
    CHECK(rep.fraction_odd == make_rational(13, 32));
    REQUIRE(rep.oracle_ran);
    CHECK(rep.oracle_agrees);
    CHECK(brute_force_gamma(places, Statistic::twoinf, Parity::odd) == make_rational(19, 32));
  }

  TEST_CASE("averaging identity on random ledgers") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<LocalPlaceDatum> places;
      int nplaces = 1 + (int)(rng() % 4);
      for (int i = 0; i < nplaces; ++i) places.push_back(random_place(rng, 8));
      Parity parity = (rng() % 2) ? Parity::even : Parity::odd;
      Statistic stat =
          (trial % 3 == 0) ? Statistic::selmer2 : (trial % 3 == 1) ? Statistic::twoinf
                                                                   : Statistic::sha;
      Rational product(1);
      for (const auto& pl : places) product *= local_factor(pl, stat);
      product.canonicalize();
      CHECK(brute_force_gamma(places, stat, parity) == global_fraction(product, parity));
    }
  }

  TEST_CASE("local factors lie in [-1, 1] with denominator dividing the count") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
      auto place = random_place(rng, 10);
      for (Statistic stat : {Statistic::selmer2, Statistic::twoinf, Statistic::sha}) {
        Rational f = local_factor(place, stat);
        CHECK(abs(f) <= 1);
        CHECK(mpz_class(place.characters.size()) % f.get_den() == 0);
      }
    }
  }

  TEST_CASE("p > 2 ledgers: odd character counts force nonzero factors") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
      LocalPlaceDatum place{"v", PlaceKind::nonarch_other, {trivial_char()}};
      int extra = 2 * (int)(rng() % 4);  // odd total
      for (int i = 0; i < extra; ++i)
        place.characters.push_back({"c", 1, (int)(rng() % 2), 0, true});
      validate({place}, 3, Statistic::selmer2);
      CHECK(local_factor(place, Statistic::selmer2) != Rational(0));
    }
  }

  TEST_CASE("validation rejects bad ledgers") {
    // first character not trivial
    LocalPlaceDatum bad{"v", PlaceKind::nonarch_other, {{"1", -1, 0, 0, false}}};
    CHECK_THROWS_AS(validate({bad}, 2, Statistic::selmer2), InputError);

    // even character count for p > 2
    LocalPlaceDatum even_count{"v", PlaceKind::nonarch_other,
                               {trivial_char(), {"c", 1, 0, 0, true}}};
    CHECK_THROWS_AS(validate({even_count}, 3, Statistic::selmer2), InputError);

    // chi_delta = -1 with p > 2
    LocalPlaceDatum bad_chi{"v", PlaceKind::nonarch_other,
                            {trivial_char(), {"a", -1, 0, 0, true}, {"b", 1, 0, 0, true}}};
    CHECK_THROWS_AS(validate({bad_chi}, 3, Statistic::selmer2), InputError);

    // twoinf with p > 2
    LocalPlaceDatum fine{"v", PlaceKind::nonarch_other, {trivial_char()}};
    CHECK_THROWS_AS(validate({fine}, 3, Statistic::twoinf), InputError);

    // empty character list
    LocalPlaceDatum empty{"v", PlaceKind::nonarch_other, {}};
    CHECK_THROWS_AS(validate({empty}, 2, Statistic::selmer2), InputError);
  }

  TEST_CASE("norm cokernel closed forms") {
    CHECK(norm_cokernel_dim(PlaceKind::nonarch_good_odd, false, 3, 2, 2) == 0);
    CHECK(norm_cokernel_dim(PlaceKind::nonarch_good_odd, true, 3, 2, 2) == 3);
    CHECK(norm_cokernel_dim(PlaceKind::archimedean_real, true, 2, 2, 2) == 0);
    CHECK(norm_cokernel_dim(PlaceKind::archimedean_real, true, 4, 2, 2) == 2);
    CHECK(norm_cokernel_dim(PlaceKind::archimedean_real, false, 4, 2, 2) == 0);
    CHECK(norm_cokernel_dim(PlaceKind::archimedean_complex, true, 4, 2, 2) == 0);
    CHECK_THROWS_AS(norm_cokernel_dim(PlaceKind::nonarch_other, true, 1, 1, 2),
                    ClosedFormUnavailable);
    CHECK_THROWS_AS(norm_cokernel_dim(PlaceKind::archimedean_real, true, 2, 2, 3), InputError);
    CHECK_THROWS_AS(norm_cokernel_dim(PlaceKind::archimedean_real, true, 1, 2, 2), InputError);
  }

  TEST_CASE("sha local term closed forms") {
    CHECK(sha_local_term(PlaceKind::nonarch_good_odd, true, true, 5) == Rational(0));
    CHECK(sha_local_term(PlaceKind::nonarch_good_odd, false, false, 5) == Rational(0));
    CHECK(sha_local_term(PlaceKind::nonarch_good_odd, false, true, 1) == make_rational(1, 2));
    CHECK(sha_local_term(PlaceKind::nonarch_good_odd, false, true, 2) == Rational(0));
    CHECK(sha_local_term(PlaceKind::archimedean_complex, false, true, 3) == Rational(0));
    CHECK(sha_local_term(PlaceKind::archimedean_real, false, true, 3) == make_rational(1, 2));
    CHECK_THROWS_AS(sha_local_term(PlaceKind::nonarch_other, false, true, 1),
                    ClosedFormUnavailable);
  }

  TEST_CASE("omega times upsilon equals Omega, per character") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
      LocalCharacterDatum c;
      c.chi_delta = (rng() % 2) ? 1 : -1;
      c.norm_cokernel_dim = (int)(rng() % 4);
      c.sha_term_double = (int)(rng() % 2);
      int omega = character_value(c, Statistic::selmer2);
      int upsilon = character_value(c, Statistic::sha);
      int big_omega = character_value(c, Statistic::twoinf);
      CHECK(omega * upsilon == big_omega);  // chi_delta^2 = 1
    }
  }

  TEST_CASE("gamma cap") {
    std::vector<LocalPlaceDatum> places;
    for (int i = 0; i < 9; ++i) places.push_back(place_with_values("v", {1, -1, 1, -1, 1, -1}));
    CHECK_THROWS_AS(brute_force_gamma(places, Statistic::selmer2, Parity::even, 1000),
                    SizeLimitError);
  }
}
