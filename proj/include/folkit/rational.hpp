#pragma once

#include <gmpxx.h>

#include <string>

namespace folkit {

using Rational = mpq_class;
using Integer = mpz_class;

std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// Accepts "a" or "a/b" with optional sign.
Rational parse_rational(const std::string& s);

// True iff q is the square of a rational; root receives the nonnegative root.
bool rational_square(const Rational& q, Rational* root = nullptr);

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace folkit
