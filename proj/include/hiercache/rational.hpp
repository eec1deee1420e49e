#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace hiercache {

/// Arbitrary-precision exact rational used for every memory and rate value.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "p/q", an integer, or a finite decimal such as "0.3755".
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_fraction_string(const Rational& value);

/// Fixed-point decimal with `places` digits after the point.
std::string to_decimal_string(const Rational& value, int places);

double to_double(const Rational& value);

Rational pow(const Rational& base, unsigned exponent);

inline Rational make_rational(long long num, long long den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

inline bool is_integer(const Rational& value) {
  return boost::multiprecision::denominator(value) == 1;
}

}  // namespace hiercache
