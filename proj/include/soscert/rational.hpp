#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>

namespace soscert {

using BigInt = boost::multiprecision::mpz_int;
using BigRational = boost::multiprecision::mpq_rational;

BigInt binomial(unsigned n, unsigned k);
BigInt factorial(unsigned n);

// n!! for odd n; double_factorial(-1 as 0 arg convention) not needed, n >= 1.
BigInt double_factorial(unsigned n);

// base^exp with exp possibly negative (base must be nonzero then).
BigRational pow_rational(const BigRational& base, long exp);

// Parses "p/q" or "p" with optional sign. Decimal or scientific literals are
// rejected: every user-facing number is an exact rational.
BigRational parse_rational(const std::string& text);

std::string rational_to_string(const BigRational& q);

bool is_integer(const BigRational& q);

// Smallest integer >= q.
BigInt rational_ceil(const BigRational& q);

inline int sign_of(const BigRational& q) { return q.sign(); }

}  // namespace soscert
