#ifndef VIRASYM_RATIONAL_HPP
#define VIRASYM_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace virasym {

// Exact scalars. Every structure constant of the algebras is rational.
using Rational = mpq_class;
using Integer = mpz_class;

/// Always "p/q" with q > 0 and gcd(p, q) = 1, including integers ("3/1").
std::string to_fraction_string(const Rational& q);

/// Human form: "3", "-1/2".
std::string to_display_string(const Rational& q);

/// Accepts "p/q" or "p"; the result is canonicalized. Throws ParseError.
Rational parse_rational(std::string_view text);

} // namespace virasym

#endif // VIRASYM_RATIONAL_HPP
