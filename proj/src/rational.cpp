#include "folkit/rational.hpp"

#include "folkit/errors.hpp"

namespace folkit {

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) fail("SyntaxError", "bad rational '" + s + "'");
  if (q.get_den() == 0) fail("DivisionByZero", s);
  q.canonicalize();
  return q;
}

bool rational_square(const Rational& q, Rational* root) {
  if (sgn(q) < 0) return false;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
    return false;
  if (root) {
    Integer a, b;
    mpz_sqrt(a.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(b.get_mpz_t(), q.get_den_mpz_t());
    *root = Rational(a, b);
    root->canonicalize();
  }
  return true;
}

}  // namespace folkit
