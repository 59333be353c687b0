#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace hopfcyc {

// Exact rational scalar. gmpxx keeps results of arithmetic in canonical form;
// values built from a numerator/denominator pair go through make_rational().
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(long num, long den = 1);

// Accepts "int" or "int/posint" (optional leading sign). Throws
// std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

// "p/q" or "p" when q == 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

// Number of decimal digits of |z| (1 for zero).
std::size_t digit_count(const Integer& z);

}  // namespace hopfcyc
