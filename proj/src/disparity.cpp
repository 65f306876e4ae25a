#include "twistlab/disparity.hpp"

#include "twistlab/errors.hpp"

namespace twistlab::disparity {

PlaceKind place_kind_from_string(const std::string& s) {
  if (s == "archimedean_real") return PlaceKind::archimedean_real;
  if (s == "archimedean_complex") return PlaceKind::archimedean_complex;
  if (s == "nonarch_good_odd") return PlaceKind::nonarch_good_odd;
  if (s == "nonarch_other") return PlaceKind::nonarch_other;
  throw InputError("unknown place kind '" + s + "'");
}

std::string to_string(PlaceKind k) {
  switch (k) {
    case PlaceKind::archimedean_real: return "archimedean_real";
    case PlaceKind::archimedean_complex: return "archimedean_complex";
    case PlaceKind::nonarch_good_odd: return "nonarch_good_odd";
    case PlaceKind::nonarch_other: return "nonarch_other";
  }
  return "?";
}

Statistic statistic_from_string(const std::string& s) {
  if (s == "selmer2") return Statistic::selmer2;
  if (s == "twoinf") return Statistic::twoinf;
  if (s == "sha") return Statistic::sha;
  throw InputError("unknown statistic '" + s + "'");
}

std::string to_string(Statistic s) {
  switch (s) {
    case Statistic::selmer2: return "selmer2";
    case Statistic::twoinf: return "twoinf";
    case Statistic::sha: return "sha";
  }
  return "?";
}

Parity parity_from_string(const std::string& s) {
  if (s == "even") return Parity::even;
  if (s == "odd") return Parity::odd;
  throw InputError("unknown parity '" + s + "'");
}

std::string to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

void validate(const std::vector<LocalPlaceDatum>& places, int p, Statistic stat) {
  if (p < 2) throw InputError("p must be a prime >= 2");
  if (p > 2 && stat != Statistic::selmer2)
    throw InputError("statistics twoinf and sha are defined only for p = 2");
  for (const auto& place : places) {
    if (place.characters.empty())
      throw InputError("place '" + place.label + "': empty character list");
    const LocalCharacterDatum& triv = place.characters.front();
    if (triv.chi_delta != 1 || triv.norm_cokernel_dim != 0 || triv.sha_term_double != 0 ||
        triv.ramified)
      throw InputError("place '" + place.label +
                       "': first character must be trivial (chi_delta 1, dims 0, unramified)");
    for (const auto& c : place.characters) {
      if (c.chi_delta != 1 && c.chi_delta != -1)
        throw InputError("place '" + place.label + "' character '" + c.name +
                         "': chi_delta must be +-1");
      if (c.sha_term_double != 0 && c.sha_term_double != 1)
        throw InputError("place '" + place.label + "' character '" + c.name +
                         "': sha_term_double must be 0 or 1");
      if (c.norm_cokernel_dim < 0)
        throw InputError("place '" + place.label + "' character '" + c.name +
                         "': negative norm_cokernel_dim");
      if (p > 2 && c.chi_delta != 1)
        throw InputError("place '" + place.label + "': chi_delta must be +1 when p > 2");
    }
    if (p > 2 && place.characters.size() % 2 == 0)
      throw InputError("place '" + place.label + "': character count must be odd when p > 2");
  }
}

int character_value(const LocalCharacterDatum& c, Statistic stat) {
  switch (stat) {
    case Statistic::selmer2:
      return c.chi_delta * ((c.norm_cokernel_dim % 2) ? -1 : 1);
    case Statistic::twoinf:
      return ((c.sha_term_double + c.norm_cokernel_dim) % 2) ? -1 : 1;
    case Statistic::sha:
      return c.chi_delta * ((c.sha_term_double % 2) ? -1 : 1);
  }
  return 1;
}

Rational local_factor(const LocalPlaceDatum& place, Statistic stat) {
  if (place.characters.empty()) throw InputError("local_factor: empty character list");
  long sum = 0;
  for (const auto& c : place.characters) sum += character_value(c, stat);
  return make_rational(sum, (long)place.characters.size());
}

Rational global_fraction(const Rational& product, Parity base_parity) {
  if (abs(product) > 1) throw InputError("global_fraction: |product| must be <= 1");
  Rational signed_prod = (base_parity == Parity::even) ? product : Rational(-product);
  Rational r = (Rational(1) + signed_prod) / 2;
  r.canonicalize();
  return r;
}

namespace {

Rational gamma_fraction(const std::vector<LocalPlaceDatum>& places, Statistic stat,
                        Parity base_parity, std::size_t cap, bool parallel) {
  std::vector<std::vector<int>> vals;
  std::size_t total = 1;
  for (const auto& place : places) {
    std::vector<int> v;
    for (const auto& c : place.characters) v.push_back(character_value(c, stat));
    if (v.empty()) throw InputError("brute_force_gamma: empty character list");
    if (total > cap / v.size()) throw SizeLimitError("brute_force_gamma: |Gamma| exceeds cap");
    total *= v.size();
    vals.push_back(std::move(v));
  }

  const int target = (base_parity == Parity::even) ? 1 : -1;
  long long hits = 0;
  const long long n = (long long)total;
#pragma omp parallel for reduction(+ : hits) schedule(static) if (parallel)
  for (long long flat = 0; flat < n; ++flat) {
    std::size_t rem = (std::size_t)flat;
    int prod = 1;
    for (const auto& v : vals) {
      prod *= v[rem % v.size()];
      rem /= v.size();
    }
    if (prod == target) ++hits;
  }
  return make_rational(hits, (long)total);
}

}  // namespace

Rational brute_force_gamma(const std::vector<LocalPlaceDatum>& places, Statistic stat,
                           Parity base_parity, std::size_t cap, Exec exec) {
  return gamma_fraction(places, stat, base_parity, cap, exec == Exec::parallel);
}

Rational brute_force_gamma_serial(const std::vector<LocalPlaceDatum>& places, Statistic stat,
                                  Parity base_parity, std::size_t cap) {
  return gamma_fraction(places, stat, base_parity, cap, false);
}

int norm_cokernel_dim(PlaceKind kind, bool ramified, int dim_torsion, int dim_A, int p) {
  if (dim_torsion < 0 || dim_A < 0) throw InputError("norm_cokernel_dim: negative dimension");
  switch (kind) {
    case PlaceKind::nonarch_good_odd:
      return ramified ? dim_torsion : 0;
    case PlaceKind::archimedean_complex:
      return 0;
    case PlaceKind::archimedean_real:
      if (!ramified) return 0;
      if (p != 2)
        throw InputError("norm_cokernel_dim: real place has no nontrivial character for p > 2");
      if (dim_torsion < dim_A)
        throw InputError("norm_cokernel_dim: dim_torsion < dim_A at a real place");
      return dim_torsion - dim_A;
    case PlaceKind::nonarch_other:
      throw ClosedFormUnavailable(
          "norm_cokernel_dim: no closed form at this place kind; supply the datum");
  }
  throw InputError("norm_cokernel_dim: bad kind");
}

Rational sha_local_term(PlaceKind kind, bool chi_trivial, bool ramified, int dim_torsion) {
  if (dim_torsion < 0) throw InputError("sha_local_term: negative dimension");
  if (kind == PlaceKind::nonarch_other)
    throw ClosedFormUnavailable(
        "sha_local_term: no closed form at this place kind; supply the datum");
  if (chi_trivial || kind == PlaceKind::archimedean_complex) return Rational(0);
  if (kind == PlaceKind::nonarch_good_odd && !ramified) return Rational(0);
  // good ramified or real nontrivial: dim/2 mod 1
  return (dim_torsion % 2) ? make_rational(1, 2) : Rational(0);
}

DisparityReport report(const std::vector<LocalPlaceDatum>& places, int p, Statistic stat,
                       Parity base_parity, bool run_oracle, std::size_t oracle_cap) {
  validate(places, p, stat);
  DisparityReport rep;
  rep.statistic = stat;
  rep.base_parity = base_parity;
  rep.product = 1;
  std::size_t gamma_size = 1;
  bool gamma_in_cap = true;
  for (const auto& place : places) {
    Rational f = local_factor(place, stat);
    rep.places.push_back({place.label, f});
    rep.product *= f;
    rep.product.canonicalize();
    if (gamma_size > oracle_cap / place.characters.size())
      gamma_in_cap = false;
    else
      gamma_size *= place.characters.size();
  }
  rep.fraction_even = global_fraction(rep.product, base_parity);
  rep.fraction_odd = Rational(1) - rep.fraction_even;
  rep.fraction_odd.canonicalize();
  if (run_oracle && gamma_in_cap) {
    rep.oracle_ran = true;
    rep.oracle_fraction_even = brute_force_gamma(places, stat, base_parity, oracle_cap);
    rep.oracle_agrees = (rep.oracle_fraction_even == rep.fraction_even);
  }
  return rep;
}

}  // namespace twistlab::disparity
