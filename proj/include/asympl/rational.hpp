#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace asympl {

using Integer = mpz_class;
/// GMP keeps mpq_class canonical (positive denominator, reduced) after canonicalize().
using Rational = mpq_class;

/// Parses "p/q", "p" or "-p/q". Throws ValidationError on malformed text or q = 0.
Rational parse_rational(std::string_view text);

/// "p/q" or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

inline double to_double(const Rational& q) { return q.get_d(); }

/// Exact rational value of a finite double (binary expansion).
Rational rational_from_double(double x);

}  // namespace asympl
