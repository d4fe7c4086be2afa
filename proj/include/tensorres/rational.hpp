#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tensorres {

// Exact rational scalar. mpq_class keeps values canonical as long as every
// value enters through the helpers below or through arithmetic.
using Rational = mpq_class;
using BigInt = mpz_class;

// Accepts "a", "-a", "a/b" and base-10 decimals such as "-1.25e-3".
// The decimal form is converted exactly. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// "a/b", or "a" when the denominator is 1.
std::string to_string(const Rational& value);

// (n)!! with the conventions (-1)!! = 0!! = 1.
BigInt double_factorial(long n);

BigInt factorial(long n);

BigInt binomial(long n, long k);

Rational pow(const Rational& base, unsigned exponent);

int sign(const Rational& value);

}  // namespace tensorres
