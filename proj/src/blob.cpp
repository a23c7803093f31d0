#include "compact_ilp/blob.hpp"

#include "compact_ilp/errors.hpp"

namespace compact_ilp {

namespace {
constexpr std::string_view kMagic = "CILP";
}

BlobWriter::BlobWriter(std::string_view tag, std::uint32_t version) {
  out_.append(kMagic);
  bytes(tag);
  u64(version);
}

void BlobWriter::raw_u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void BlobWriter::u64(std::uint64_t v) { raw_u64(v); }

void BlobWriter::bytes(std::string_view data) {
  raw_u64(data.size());
  out_.append(data);
}

void BlobWriter::u64_list(const std::vector<std::uint64_t>& values) {
  raw_u64(values.size());
  for (auto v : values) raw_u64(v);
}

void BlobWriter::section(std::string_view name, std::string_view payload) {
  bytes(name);
  bytes(payload);
}

BlobReader::BlobReader(std::string_view data, std::string_view tag, std::uint32_t version) : data_(data) {
  if (take(kMagic.size()) != kMagic) throw ParseError("blob: bad magic");
  const std::string found = bytes();
  if (found != tag) throw ParseError("blob: expected tag '" + std::string(tag) + "', found '" + found + "'");
  const std::uint64_t v = u64();
  if (v != version)
    throw ParseError("blob '" + found + "': unsupported version " + std::to_string(v));
}

std::string_view BlobReader::take(std::size_t n) {
  if (n > data_.size() - pos_) throw ParseError("blob: truncated at byte " + std::to_string(pos_));
  auto out = data_.substr(pos_, n);
  pos_ += n;
  return out;
}

std::uint64_t BlobReader::u64() {
  const auto raw = take(8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(raw[i]);
  return v;
}

bool BlobReader::boolean() {
  const auto v = u64();
  if (v > 1) throw ParseError("blob: boolean field holds " + std::to_string(v));
  return v == 1;
}

std::string BlobReader::bytes() {
  const auto n = u64();
  return std::string(take(n));
}

Rational BlobReader::rational() {
  const auto text = bytes();
  Rational q;
  if (!parse_rational(text, q)) throw ParseError("blob: bad rational '" + text + "'");
  return q;
}

BigInt BlobReader::bigint() {
  const auto text = bytes();
  BigInt v;
  if (!parse_bigint(text, v)) throw ParseError("blob: bad integer '" + text + "'");
  return v;
}

std::vector<std::uint64_t> BlobReader::u64_list() {
  const auto n = u64();
  if (n > (data_.size() - pos_) / 8) throw ParseError("blob: list length exceeds payload");
  std::vector<std::uint64_t> out(n);
  for (auto& v : out) v = u64();
  return out;
}

std::string BlobReader::section(std::string_view name) {
  const auto found = bytes();
  if (found != name) throw ParseError("blob: expected section '" + std::string(name) + "', found '" + found + "'");
  return bytes();
}

void BlobReader::expect_end() const {
  if (!at_end()) throw ParseError("blob: " + std::to_string(data_.size() - pos_) + " trailing bytes");
}

}  // namespace compact_ilp
