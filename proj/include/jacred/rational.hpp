#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace jacred {

/// Arbitrary precision rational, always in lowest terms with positive
/// denominator (GMP keeps mpq_class canonical after every operation).
using Rational = mpq_class;
using Integer = mpz_class;

inline int sign(const Rational& q) { return sgn(q); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// "p" or "p/q" with q > 1.
std::string to_string(const Rational& q);

/// Parses "p" or "p/q" (optional leading '-'). Throws DomainError on bad input
/// or zero denominator.
Rational parse_rational(std::string_view text);

Rational pow(const Rational& base, unsigned exponent);

std::size_t hash_value(const Rational& q);

}  // namespace jacred
