#pragma once

#include <cstdint>
#include <string>
#include <type_traits>

#include "compact_ilp/numeric.hpp"

// Integer engines are templated on the working scalar: std::int64_t when every
// intermediate provably fits, BigInt otherwise.

namespace compact_ilp {

/// True when |v| < 2^62, leaving headroom for one addition of two such values.
inline bool fits_machine_word(const BigInt& v) {
  static const BigInt kLimit = BigInt(1) << 62;
  return abs_value(v) < kLimit;
}

template <typename Scalar>
Scalar scalar_cast(const BigInt& v) {
  if constexpr (std::is_same_v<Scalar, BigInt>) {
    return v;
  } else {
    return static_cast<Scalar>(v);
  }
}

template <typename Scalar>
BigInt to_bigint(const Scalar& v) {
  if constexpr (std::is_same_v<Scalar, BigInt>) {
    return v;
  } else {
    return BigInt(v);
  }
}

/// Rounds toward negative infinity; b != 0.
template <typename Scalar>
Scalar floor_div(const Scalar& a, const Scalar& b) {
  Scalar q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

/// Rounds toward positive infinity; b != 0.
template <typename Scalar>
Scalar ceil_div(const Scalar& a, const Scalar& b) {
  Scalar q = a / b;
  if (a % b != 0 && ((a < 0) == (b < 0))) q += 1;
  return q;
}

/// Little-endian bytes of each coordinate; used as a hash key.
inline void append_key(std::string& key, std::int64_t v) {
  auto u = static_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) key.push_back(static_cast<char>((u >> (8 * i)) & 0xff));
}

inline void append_key(std::string& key, const BigInt& v) {
  key += v.str();
  key.push_back(',');
}

}  // namespace compact_ilp
