#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace minsurf {

// GMP keeps mpq_class canonical after every arithmetic operation:
// gcd(|num|, den) = 1, den >= 1, zero is 0/1.
using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(long num, long den = 1);

// Parses "a" or "a/b" in base 10.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

}  // namespace minsurf
