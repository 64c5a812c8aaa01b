#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace bca {

/// Exact rational, always canonical (gcd(num, den) = 1, den > 0).
using Rational = mpq_class;
/// Arbitrary-precision integer used for scaled objective values.
using BigInt = mpz_class;

/// Parses "p/q", "p", or a finite decimal such as "0.05" or "-1.25e-2" exactly.
/// Throws bca::Error(ErrorCode::ParseError) on malformed input or q = 0.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string format_rational(const Rational& value);

/// Decimal rendering with `digits` significant digits. Presentation only.
std::string format_decimal(const Rational& value, int digits = 12);

double to_double(const Rational& value);

Rational floor_of(const Rational& value);
BigInt floor_div(const Rational& value, const Rational& unit);
BigInt ceil_div(const Rational& value, const Rational& unit);

BigInt lcm(const BigInt& a, const BigInt& b);

struct BigIntHash {
  std::size_t operator()(const BigInt& value) const noexcept;
};

}  // namespace bca
