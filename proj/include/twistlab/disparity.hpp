#pragma once

#include <string>
#include <vector>

#include "twistlab/exec.hpp"
#include "twistlab/rational.hpp"

namespace twistlab::disparity {

enum class PlaceKind {
  archimedean_real,
  archimedean_complex,
  nonarch_good_odd,
  nonarch_other,
};

enum class Statistic { selmer2, twoinf, sha };
enum class Parity { even, odd };

PlaceKind place_kind_from_string(const std::string& s);
std::string to_string(PlaceKind k);
Statistic statistic_from_string(const std::string& s);
std::string to_string(Statistic s);
Parity parity_from_string(const std::string& s);
std::string to_string(Parity p);

/// One local character's ledger entry. For archimedean places the ramified
/// flag means "chi nontrivial".
struct LocalCharacterDatum {
  std::string name;
  int chi_delta = 1;          // chi(Delta), +-1
  int norm_cokernel_dim = 0;  // dim A(K_v) / N A(L_chi)
  int sha_term_double = 0;    // 2 * inv_v of the local class, in {0, 1}
  bool ramified = false;
};

/// Per-place ledger. The first character must be the trivial one
/// (chi_delta = +1, both dims 0, unramified).
struct LocalPlaceDatum {
  std::string label;
  PlaceKind kind = PlaceKind::nonarch_other;
  std::vector<LocalCharacterDatum> characters;
};

/// Validates the ledger invariants; p > 2 additionally forces odd character
/// counts, chi_delta = +1 throughout, and statistic selmer2.
void validate(const std::vector<LocalPlaceDatum>& places, int p, Statistic stat);

/// The +-1 value of one character under the chosen statistic:
///   selmer2: chi(Delta) * (-1)^norm_cokernel_dim
///   twoinf:  (-1)^(sha_term_double + norm_cokernel_dim)
///   sha:     chi(Delta) * (-1)^sha_term_double
int character_value(const LocalCharacterDatum& c, Statistic stat);

/// Mean of character_value over the place's characters; exact.
Rational local_factor(const LocalPlaceDatum& place, Statistic stat);

/// (1 + sign * product) / 2 with sign = +1 for even base parity, -1 for odd.
Rational global_fraction(const Rational& product, Parity base_parity);

/// Fraction of tuples in Gamma = prod_v C(K_v) whose value product equals
/// the target sign, by direct enumeration. Equals
/// global_fraction(prod local_factor, base_parity).
Rational brute_force_gamma(const std::vector<LocalPlaceDatum>& places, Statistic stat,
                           Parity base_parity, std::size_t cap = 10'000'000,
                           Exec exec = Exec::parallel);
Rational brute_force_gamma_serial(const std::vector<LocalPlaceDatum>& places, Statistic stat,
                                  Parity base_parity, std::size_t cap = 10'000'000);

/// Closed-form norm-cokernel dimension:
///   good odd place: 0 unramified, dim_torsion ramified
///   real place (p = 2, chi nontrivial): dim_torsion - dim_A
///   complex place: 0
/// Throws ClosedFormUnavailable for nonarch_other.
int norm_cokernel_dim(PlaceKind kind, bool ramified, int dim_torsion, int dim_A, int p);

/// Closed-form local class invariant, in {0, 1/2}: 0 for trivial chi,
/// complex places and good unramified; dim_torsion/2 mod 1 for good
/// ramified and real nontrivial. Throws ClosedFormUnavailable for
/// nonarch_other.
Rational sha_local_term(PlaceKind kind, bool chi_trivial, bool ramified, int dim_torsion);

struct PlaceReport {
  std::string label;
  Rational factor;
};

struct DisparityReport {
  Statistic statistic;
  Parity base_parity;
  std::vector<PlaceReport> places;
  Rational product;
  Rational fraction_even;
  Rational fraction_odd;
  bool oracle_ran = false;
  Rational oracle_fraction_even;
  bool oracle_agrees = false;
};

DisparityReport report(const std::vector<LocalPlaceDatum>& places, int p, Statistic stat,
                       Parity base_parity, bool run_oracle = true,
                       std::size_t oracle_cap = 10'000'000);

}  // namespace twistlab::disparity
