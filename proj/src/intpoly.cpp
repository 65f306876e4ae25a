#include "twistlab/intpoly.hpp"

#include <cctype>

#include "twistlab/errors.hpp"

namespace twistlab::galois {

IntPolynomial::IntPolynomial(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const mpz_class& IntPolynomial::coeff(int i) const {
  static const mpz_class zero = 0;
  if (i < 0 || i >= (int)c_.size()) return zero;
  return c_[i];
}

IntPolynomial IntPolynomial::derivative() const {
  std::vector<mpz_class> d;
  for (int i = 1; i < (int)c_.size(); ++i) d.push_back(c_[i] * i);
  return IntPolynomial(std::move(d));
}

std::string IntPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i] == 0) continue;
    mpz_class a = c_[i];
    if (out.empty()) {
      if (a < 0) out += "-";
    } else {
      out += (a < 0) ? "-" : "+";
    }
    mpz_class mag = abs(a);
    if (i == 0 || mag != 1) out += mag.get_str();
    if (i > 0) {
      out += "x";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

IntPolynomial parse_polynomial(std::string_view text) {
  std::vector<mpz_class> coeffs;
  auto bump = [&](int power, const mpz_class& value) {
    if ((int)coeffs.size() <= power) coeffs.resize(power + 1, 0);
    coeffs[power] += value;
  };

  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
  };
  skip_ws();
  if (i == text.size()) throw InputError("polynomial: empty input");

  bool first = true;
  while (true) {
    skip_ws();
    if (i == text.size()) break;

    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = (text[i] == '-') ? -1 : 1;
      ++i;
      skip_ws();
    } else if (!first) {
      throw InputError("polynomial: expected '+' or '-' before term");
    }
    first = false;

    std::string digits;
    while (i < text.size() && std::isdigit((unsigned char)text[i])) digits += text[i++];
    skip_ws();
    if (i < text.size() && text[i] == '*') {
      if (digits.empty()) throw InputError("polynomial: stray '*'");
      ++i;
      skip_ws();
    }

    bool has_x = i < text.size() && text[i] == 'x';
    if (!has_x && digits.empty()) throw InputError("polynomial: empty term");

    int power = 0;
    if (has_x) {
      ++i;
      power = 1;
      skip_ws();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip_ws();
        std::string pd;
        while (i < text.size() && std::isdigit((unsigned char)text[i])) pd += text[i++];
        if (pd.empty()) throw InputError("polynomial: missing exponent after '^'");
        if (pd.size() > 4) throw InputError("polynomial: exponent too large");
        power = std::stoi(pd);
      }
    }
    mpz_class value = digits.empty() ? mpz_class(1) : mpz_class(digits);
    bump(power, sign * value);
  }
  IntPolynomial p(std::move(coeffs));
  if (p.is_zero()) throw InputError("polynomial: zero polynomial");
  return p;
}

mpz_class resultant(const IntPolynomial& f, const IntPolynomial& g) {
  int n = f.degree(), m = g.degree();
  if (n < 0 || m < 0) return 0;
  if (n == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), f.lead().get_mpz_t(), m);
    return r;
  }
  if (m == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), g.lead().get_mpz_t(), n);
    return r;
  }

  int size = n + m;
  std::vector<std::vector<mpz_class>> s(size, std::vector<mpz_class>(size, 0));
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s[r][r + k] = f.coeff(n - k);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s[m + r][r + k] = g.coeff(m - k);

  // Bareiss fraction-free elimination; the determinant is the last pivot.
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < size - 1; ++k) {
    if (s[k][k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < size; ++r)
        if (s[r][k] != 0) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return 0;
      std::swap(s[k], s[swap_row]);
      sign = -sign;
    }
    for (int r = k + 1; r < size; ++r) {
      for (int c = k + 1; c < size; ++c) {
        mpz_class num = s[r][c] * s[k][k] - s[r][k] * s[k][c];
        mpz_divexact(s[r][c].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      s[r][k] = 0;
    }
    prev = s[k][k];
  }
  return sign * s[size - 1][size - 1];
}

mpz_class discriminant(const IntPolynomial& f) {
  int n = f.degree();
  if (n < 2) throw InputError("discriminant: degree must be at least 2");
  mpz_class res = resultant(f, f.derivative());
  mpz_class out;
  mpz_divexact(out.get_mpz_t(), res.get_mpz_t(), f.lead().get_mpz_t());
  if ((n * (n - 1) / 2) % 2 == 1) out = -out;
  return out;
}

}  // namespace twistlab::galois
