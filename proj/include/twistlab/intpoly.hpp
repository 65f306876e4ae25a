#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace twistlab::galois {

/// Integer polynomial, coefficients constant-term first, nonzero leading
/// coefficient (the zero polynomial has an empty coefficient list).
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> coeffs_constant_first);

  int degree() const { return (int)c_.size() - 1; }
  bool is_zero() const { return c_.empty(); }
  const mpz_class& coeff(int i) const;
  const mpz_class& lead() const { return c_.back(); }
  const std::vector<mpz_class>& coeffs() const { return c_; }

  IntPolynomial derivative() const;
  std::string to_string() const;  // display form, highest power first

 private:
  std::vector<mpz_class> c_;
};

/// Parses "x^6+x^4+x+3": integer coefficients, single variable x, caret
/// powers, optional '*', ASCII. Throws InputError on anything else.
IntPolynomial parse_polynomial(std::string_view text);

/// Resultant of f and g via the Sylvester matrix, evaluated exactly with
/// fraction-free (Bareiss) elimination.
mpz_class resultant(const IntPolynomial& f, const IntPolynomial& g);

/// (-1)^(n(n-1)/2) Res(f, f') / lead(f); requires deg >= 2.
mpz_class discriminant(const IntPolynomial& f);

}  // namespace twistlab::galois
