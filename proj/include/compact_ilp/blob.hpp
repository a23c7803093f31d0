#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "compact_ilp/numeric.hpp"

namespace compact_ilp {

/// Versioned binary container used for Advice payloads.
///
/// Layout: magic "CILP", tag string, u32 version, then fields. Integers are
/// little-endian u64, strings and sections are u64-length-prefixed, rationals
/// are stored as their decimal "p" or "p/q" text.
class BlobWriter {
 public:
  BlobWriter(std::string_view tag, std::uint32_t version);

  void u64(std::uint64_t v);
  void boolean(bool v) { u64(v ? 1 : 0); }
  void bytes(std::string_view data);
  void rational(const Rational& q) { bytes(to_string(q)); }
  void bigint(const BigInt& v) { bytes(v.str()); }
  void u64_list(const std::vector<std::uint64_t>& values);
  /// Nested blob written as a named, length-prefixed section.
  void section(std::string_view name, std::string_view payload);

  const std::string& data() const { return out_; }
  std::string take() { return std::move(out_); }

 private:
  void raw_u64(std::uint64_t v);
  std::string out_;
};

/// Reads what BlobWriter wrote; any truncation, tag or version mismatch
/// raises ParseError.
class BlobReader {
 public:
  BlobReader(std::string_view data, std::string_view tag, std::uint32_t version);

  std::uint64_t u64();
  bool boolean();
  std::string bytes();
  Rational rational();
  BigInt bigint();
  std::vector<std::uint64_t> u64_list();
  std::string section(std::string_view name);

  bool at_end() const { return pos_ == data_.size(); }
  void expect_end() const;

 private:
  std::string_view take(std::size_t n);
  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace compact_ilp
