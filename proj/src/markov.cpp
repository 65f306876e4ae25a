#include "twistlab/markov.hpp"

#include <random>

#include "twistlab/errors.hpp"

namespace twistlab::markov {

RatMatrix RatMatrix::identity(int n) {
  RatMatrix m{n, std::vector<Rational>((std::size_t)n * n, 0)};
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMatrix operator*(const RatMatrix& x, const RatMatrix& y) {
  if (x.n != y.n) throw InputError("RatMatrix: size mismatch");
  RatMatrix out{x.n, std::vector<Rational>((std::size_t)x.n * x.n, 0)};
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      if (x.at(i, k) == 0) continue;
      for (int j = 0; j < x.n; ++j) {
        out.at(i, j) += x.at(i, k) * y.at(k, j);
        out.at(i, j).canonicalize();
      }
    }
  return out;
}

std::size_t state_count(int p, int r) {
  std::size_t n = 1;
  for (int i = 0; i < r; ++i) {
    n *= (std::size_t)p;
    if (n > 100'000) throw SizeLimitError("state space p^r too large");
  }
  return n;
}

namespace {

void check_class(const FrobeniusClassDatum& cls, int p, int r) {
  if (p < 3 || p % 2 == 0) throw InputError("markov: p must be an odd prime");
  if (cls.epsilon != 1 && cls.epsilon != -1)
    throw InputError("markov: epsilon must be +-1 in class '" + cls.label + "'");
  if ((int)cls.rho.size() != r)
    throw InputError("markov: rho length != r in class '" + cls.label + "'");
  for (int v : cls.rho)
    if (v < 0 || v >= p) throw InputError("markov: rho entries must lie in [0, p)");
}

std::size_t translate_index(std::size_t idx, const std::vector<int>& by, int p, int times) {
  std::size_t out = 0, base = 1;
  for (std::size_t i = 0; i < by.size(); ++i) {
    int digit = (int)(idx % p);
    digit = (digit + times * by[i]) % p;
    out += (std::size_t)digit * base;
    idx /= p;
    base *= p;
  }
  return out;
}

}  // namespace

RatMatrix markov_matrix(const FrobeniusClassDatum& cls, int p, int r) {
  check_class(cls, p, r);
  int n = (int)state_count(p, r);
  RatMatrix m{n, std::vector<Rational>((std::size_t)n * n, 0)};
  Rational inv_p = make_rational(1, p);
  Rational eps_over_p = make_rational(cls.epsilon, p);
  for (int c = 0; c < n; ++c) {
    m.at(c, c) += inv_p;
    for (int i = 1; i < p; ++i) {
      int row = (int)translate_index((std::size_t)c, cls.rho, p, i);
      m.at(row, c) += eps_over_p;
      m.at(row, c).canonicalize();
    }
  }
  for (auto& v : m.a) v.canonicalize();
  return m;
}

RatMatrix markov_power_closed_form(const FrobeniusClassDatum& cls, int p, int r, long m) {
  if (m < 1) throw InputError("markov_power_closed_form: m must be >= 1");
  RatMatrix base = markov_matrix(cls, p, r);
  if (cls.epsilon == 1) return base;

  Rational two_p = make_rational(2, p);
  Rational rest = make_rational(2 - p, p);
  auto pow = [](Rational x, long e) {
    Rational acc(1);
    for (long i = 0; i < e; ++i) {
      acc *= x;
      acc.canonicalize();
    }
    return acc;
  };
  Rational a = two_p * pow(rest, m) - rest * pow(two_p, m);
  Rational b = pow(two_p, m) - pow(rest, m);
  a.canonicalize();
  b.canonicalize();

  RatMatrix out = RatMatrix::identity(base.n);
  for (int i = 0; i < base.n; ++i)
    for (int j = 0; j < base.n; ++j) {
      out.at(i, j) = a * (i == j ? Rational(1) : Rational(0)) + b * base.at(i, j);
      out.at(i, j).canonicalize();
    }
  return out;
}

Rational step_norm_bound(const FrobeniusClassDatum& cls, int p) {
  if (cls.epsilon == 1) return Rational(1);
  Rational two_p = make_rational(2, p);
  Rational shrink = make_rational(p - 2, p);
  return two_p > shrink ? two_p : shrink;
}

Rational MarkovState::norm_sq() const {
  Rational acc(0);
  for (const Rational& v : vec) {
    acc += v * v;
    acc.canonicalize();
  }
  return acc;
}

MarkovState initial_state(int p, int r) {
  std::vector<Rational> vec(state_count(p, r), Rational(0));
  vec[0] = make_rational(1, 2);
  return initial_state(p, r, std::move(vec));
}

MarkovState initial_state(int p, int r, std::vector<Rational> vec) {
  if (vec.size() != state_count(p, r)) throw InputError("initial_state: wrong vector length");
  MarkovState s;
  s.p = p;
  s.r = r;
  s.vec = std::move(vec);
  s.norm_sq_history.push_back(s.norm_sq());
  return s;
}

namespace {

void apply_class(MarkovState& s, const FrobeniusClassDatum& cls) {
  int p = s.p;
  std::size_t n = s.vec.size();
  std::vector<Rational> next(n, Rational(0));
  Rational inv_p = make_rational(1, p);
  Rational eps_over_p = make_rational(cls.epsilon, p);
  for (std::size_t c = 0; c < n; ++c) {
    if (s.vec[c] == 0) continue;
    next[c] += inv_p * s.vec[c];
    next[c].canonicalize();
    for (int i = 1; i < p; ++i) {
      std::size_t row = translate_index(c, cls.rho, p, i);
      next[row] += eps_over_p * s.vec[c];
      next[row].canonicalize();
    }
  }
  s.vec = std::move(next);
  s.norm_sq_history.push_back(s.norm_sq());
}

RunResult run_with_draws(MarkovState state, const std::vector<FrobeniusClassDatum>& classes,
                         const std::vector<std::size_t>& draws) {
  RunResult out;
  for (std::size_t k : draws) {
    if (k >= classes.size()) throw InputError("markov run: class index out of range");
    Rational before = state.norm_sq_history.back();
    apply_class(state, classes[k]);
    Rational bound = step_norm_bound(classes[k], state.p);
    Rational limit = bound * bound * before;
    limit.canonicalize();
    if (state.norm_sq_history.back() > limit) out.decay_bound_held = false;
    if (classes[k].epsilon == -1) ++out.eps_minus_draws;
  }
  out.draws = draws;
  out.state = std::move(state);
  return out;
}

}  // namespace

RunResult markov_run(MarkovState initial, const std::vector<FrobeniusClassDatum>& classes,
                     int steps, std::uint64_t seed) {
  if (classes.empty()) throw InputError("markov_run: no classes");
  Rational total(0);
  for (const auto& c : classes) {
    check_class(c, initial.p, initial.r);
    if (c.weight < 0) throw InputError("markov_run: negative weight");
    total += c.weight;
    total.canonicalize();
  }
  if (total != 1) throw InputError("markov_run: weights must sum to 1");

  // Draw by comparing u / 2^64 against the exact cumulative weights.
  std::mt19937_64 rng(seed);
  mpz_class two64 = mpz_class(1) << 64;
  std::vector<mpz_class> cumulative;  // cumulative weight * 2^64, floor
  Rational acc(0);
  for (const auto& c : classes) {
    acc += c.weight;
    acc.canonicalize();
    mpz_class scaled = acc.get_num() * two64 / acc.get_den();
    cumulative.push_back(scaled);
  }

  std::vector<std::size_t> draws;
  for (int s = 0; s < steps; ++s) {
    mpz_class u((unsigned long)rng());
    std::size_t k = 0;
    while (k + 1 < classes.size() && u >= cumulative[k]) ++k;
    draws.push_back(k);
  }
  return run_with_draws(std::move(initial), classes, draws);
}

RunResult markov_run_sequence(MarkovState initial,
                              const std::vector<FrobeniusClassDatum>& classes,
                              const std::vector<std::size_t>& labels) {
  for (const auto& c : classes) check_class(c, initial.p, initial.r);
  return run_with_draws(std::move(initial), classes, labels);
}

}  // namespace twistlab::markov
