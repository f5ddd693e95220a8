#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace nodal {

using BigInt = mpz_class;

/// Exact rational in lowest terms with positive denominator.
///
/// Backed by GMP's mpq_class: every arithmetic operator returns a canonical
/// value, so the invariant only needs enforcing where we build from raw parts.
using Rational = mpq_class;

Rational make_rational(const BigInt& num, const BigInt& den);

/// "p/q", or "n" when the value is integral.
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

/// Parses "n" or "p/q"; rejects non-canonical forms so that serialization
/// stays bit-exact in both directions.
Rational parse_rational(std::string_view text);

bool is_integral(const Rational& value);

/// Integer value of an integral rational; throws ConsistencyError otherwise.
BigInt to_integer(const Rational& value);

long to_long(const BigInt& value);

} // namespace nodal
