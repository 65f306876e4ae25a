#include "twistlab/rational.hpp"

#include "twistlab/errors.hpp"

namespace twistlab {

Rational make_rational(long num, long den) {
  if (den == 0) throw InputError("rational: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_frac_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InputError("rational: empty string");
  try {
    std::size_t slash = s.find('/');
    if (slash == std::string::npos) {
      mpz_class n(s);
      return Rational(n);
    }
    mpz_class num(s.substr(0, slash));
    mpz_class den(s.substr(slash + 1));
    if (den == 0) throw InputError("rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument& e) {
    throw InputError("rational: cannot parse '" + s + "'");
  }
}

}  // namespace twistlab
