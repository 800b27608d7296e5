#pragma once

// Exact arithmetic primitives. Everything that ends up in a certificate is
// computed with these types; doubles only appear as display annotations.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace allin {

using Int = mpz_class;
using Rat = mpq_class;

/// Builds num/den in lowest terms. Throws std::domain_error on a zero denominator.
Rat make_rat(const Int& num, const Int& den);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rat& r);
std::string to_string(const Int& i);

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed text.
Rat parse_rat(std::string_view text);

double to_double(const Rat& r);

Rat pow(const Rat& base, unsigned exponent);

inline int sgn(const Int& v) { return ::sgn(v); }
inline int sgn(const Rat& v) { return ::sgn(v); }

}  // namespace allin
