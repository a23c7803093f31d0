#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace compact_ilp {

/// Bits needed to store any value in 0..count-1; ceil(log2(count)), 0 when count <= 1.
std::size_t field_width(std::uint64_t count);

/// Fixed-length bit string, bit 0 first.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n) : bits_(n, false) {}

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, bool v) { bits_[i] = v; }

  /// Bit i equals bit (n - 1 - i) of value; enumerates all strings of length n <= 64.
  static BitString from_index(std::uint64_t value, std::size_t n);

  /// Hex digits, four bits each, the last digit padded with zero bits.
  std::string to_hex() const;
  /// Inverse of to_hex for a known length; ParseError on bad digits, wrong
  /// digit count or nonzero padding.
  static BitString from_hex(std::string_view hex, std::size_t n);

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<bool> bits_;
};

/// Appends fixed-width fields, most significant bit first.
class BitWriter {
 public:
  /// Throws UsageError if value does not fit in width bits.
  void put(std::uint64_t value, std::size_t width);
  void flag(bool v) { bits_.push_back(v); }
  std::size_t size() const { return bits_.size(); }
  BitString finish() const;

 private:
  std::vector<bool> bits_;
};

/// Reads fixed-width fields; reading past the end throws UsageError.
class BitReader {
 public:
  explicit BitReader(const BitString& bits) : bits_(bits) {}
  std::uint64_t get(std::size_t width);
  bool flag() { return get(1) != 0; }
  std::size_t remaining() const { return bits_.size() - pos_; }

 private:
  const BitString& bits_;
  std::size_t pos_ = 0;
};

}  // namespace compact_ilp
