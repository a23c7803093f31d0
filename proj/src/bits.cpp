#include "compact_ilp/bits.hpp"

#include "compact_ilp/errors.hpp"
#include "compact_ilp/numeric.hpp"

namespace compact_ilp {

std::size_t field_width(std::uint64_t count) { return ceil_log2(count); }

BitString BitString::from_index(std::uint64_t value, std::size_t n) {
  if (n > 64) throw UsageError("from_index supports at most 64 bits");
  BitString out(n);
  for (std::size_t i = 0; i < n; ++i) out.bits_[i] = (value >> (n - 1 - i)) & 1u;
  return out;
}

std::string BitString::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < bits_.size(); i += 4) {
    unsigned digit = 0;
    for (std::size_t j = 0; j < 4; ++j) digit = digit << 1 | (i + j < bits_.size() && bits_[i + j] ? 1u : 0u);
    out.push_back(kDigits[digit]);
  }
  return out;
}

BitString BitString::from_hex(std::string_view hex, std::size_t n) {
  if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) hex.remove_prefix(2);
  const std::size_t digits = (n + 3) / 4;
  if (hex.size() != digits)
    throw ParseError("witness needs " + std::to_string(digits) + " hex digits for " + std::to_string(n) +
                     " bits, got " + std::to_string(hex.size()));
  BitString out(n);
  for (std::size_t d = 0; d < digits; ++d) {
    const char c = hex[d];
    unsigned v;
    if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F') v = static_cast<unsigned>(c - 'A' + 10);
    else throw ParseError(std::string("invalid hex digit '") + c + "'", 0, 0);
    for (std::size_t j = 0; j < 4; ++j) {
      const bool bit = (v >> (3 - j)) & 1u;
      const std::size_t i = 4 * d + j;
      if (i < n) out.bits_[i] = bit;
      else if (bit) throw ParseError("nonzero padding bits after the last witness bit");
    }
  }
  return out;
}

void BitWriter::put(std::uint64_t value, std::size_t width) {
  if (width < 64 && (value >> width) != 0)
    throw UsageError("value " + std::to_string(value) + " does not fit in " + std::to_string(width) + " bits");
  for (std::size_t i = width; i-- > 0;) bits_.push_back(i < 64 && ((value >> i) & 1u));
}

BitString BitWriter::finish() const {
  BitString out(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) out.set(i, bits_[i]);
  return out;
}

std::uint64_t BitReader::get(std::size_t width) {
  if (width > 64) throw UsageError("field wider than 64 bits");
  if (width > remaining()) throw UsageError("witness field runs past the end of the bit string");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i) v = v << 1 | (bits_[pos_++] ? 1u : 0u);
  return v;
}

}  // namespace compact_ilp
