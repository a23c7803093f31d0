#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace compact_ilp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt abs_value(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

/// Smallest b with 2^b >= x; 0 for x <= 1.
constexpr unsigned ceil_log2(std::uint64_t x) {
  unsigned bits = 0;
  while (bits < 64 && (std::uint64_t{1} << bits) < x) ++bits;
  return bits;
}

/// floor(a / b) for b != 0 over exact rationals.
inline BigInt floor_div(const Rational& q) {
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  BigInt quo = num / den;
  if (num % den != 0 && num < 0) quo -= 1;
  return quo;
}

inline std::string to_decimal(const BigInt& v) { return v.str(); }

inline std::string to_string(const Rational& q) {
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

/// Parses an optionally signed decimal integer; returns false on any junk.
bool parse_bigint(std::string_view text, BigInt& out);

/// Parses "p", "p/q" or a terminating decimal "1.25" into an exact rational.
bool parse_rational(std::string_view text, Rational& out);

}  // namespace compact_ilp
