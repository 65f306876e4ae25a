#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twistlab/rational.hpp"

namespace twistlab::markov {

/// One Frobenius conjugacy class: its epsilon sign, the exponent tuple
/// rho in (Z/p)^r it translates by, and its Chebotarev weight.
struct FrobeniusClassDatum {
  std::string label;
  int epsilon = 1;  // +-1
  std::vector<int> rho;
  Rational weight = 0;
};

/// Dense square matrix of exact rationals, indexed by exponent tuples in
/// (Z/p)^r flattened little-endian (index = sum a_i p^i).
struct RatMatrix {
  int n = 0;
  std::vector<Rational> a;  // row-major

  static RatMatrix identity(int n);
  Rational& at(int r, int c) { return a[(std::size_t)r * n + c]; }
  const Rational& at(int r, int c) const { return a[(std::size_t)r * n + c]; }
  friend RatMatrix operator*(const RatMatrix& x, const RatMatrix& y);
  bool operator==(const RatMatrix&) const = default;
};

std::size_t state_count(int p, int r);

/// M(class) = (1/p)(I + epsilon * sum_{i=1..p-1} P_rho^i), where P_rho is
/// the translation by rho on the group algebra basis. p odd.
RatMatrix markov_matrix(const FrobeniusClassDatum& cls, int p, int r);

/// M^m in closed form: M itself when epsilon = +1; for epsilon = -1,
/// ((2/p)((2-p)/p)^m - ((2-p)/p)(2/p)^m) I + ((2/p)^m - ((2-p)/p)^m) M.
RatMatrix markov_power_closed_form(const FrobeniusClassDatum& cls, int p, int r, long m);

/// Operator norm of M(class): 1 when epsilon = +1, max(2/p, (p-2)/p) when
/// epsilon = -1.
Rational step_norm_bound(const FrobeniusClassDatum& cls, int p);

struct MarkovState {
  int p = 3;
  int r = 0;
  std::vector<Rational> vec;
  std::vector<Rational> norm_sq_history;  // includes the initial norm

  Rational norm_sq() const;
};

/// Default start: (1/2) e_0.
MarkovState initial_state(int p, int r);
MarkovState initial_state(int p, int r, std::vector<Rational> vec);

struct RunResult {
  MarkovState state;
  std::vector<std::size_t> draws;  // class index per step
  long long eps_minus_draws = 0;
  /// Stepwise bound |t_{n+1}|^2 <= bound(class)^2 |t_n|^2 held at every step.
  bool decay_bound_held = true;
};

/// Left-multiplies the vector by M(class) for `steps` draws made by weight
/// with a seeded deterministic stream. Weights must sum to 1.
RunResult markov_run(MarkovState initial, const std::vector<FrobeniusClassDatum>& classes,
                     int steps, std::uint64_t seed);

/// Same, but consuming an explicit label sequence (indices into classes).
RunResult markov_run_sequence(MarkovState initial,
                              const std::vector<FrobeniusClassDatum>& classes,
                              const std::vector<std::size_t>& labels);

}  // namespace twistlab::markov
