#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace compact_ilp {

using StringHandle = std::uint32_t;

struct StringStoreCounters {
  std::uint64_t singletons = 0;
  std::uint64_t concats = 0;
  std::uint64_t splits = 0;
  std::uint64_t equals = 0;
  std::uint64_t steps = 0;

  std::uint64_t operations() const { return singletons + concats + splits + equals; }
};

/// Persistent collection of byte strings with split, concatenation and
/// equality.
///
/// Strings are AVL-balanced ropes over an append-only node arena, so handles
/// never change and hosts survive every operation. Each node carries a
/// Karp-Rabin fingerprint modulo 2^61 - 1; equality compares length and
/// fingerprint.
class StringStore {
 public:
  static constexpr std::uint64_t kDefaultSeed = 0x9e3779b97f4a7c15ULL;

  explicit StringStore(std::uint64_t seed = kDefaultSeed);

  StringHandle empty() const { return 0; }
  StringHandle singleton(std::uint8_t symbol);
  StringHandle concat(StringHandle a, StringHandle b);
  /// Splits into the first `index` symbols and the rest. The index may be 0
  /// or the full length, yielding an empty part. Throws DomainError otherwise.
  std::pair<StringHandle, StringHandle> split(StringHandle h, std::size_t index);
  bool equal(StringHandle a, StringHandle b);

  /// Builds a string by singletons and left-to-right concatenation.
  StringHandle build(std::string_view text);

  std::size_t length(StringHandle h) const;
  std::string materialize(StringHandle h) const;
  std::size_t size() const { return nodes_.size(); }
  std::uint64_t seed() const { return seed_; }
  const StringStoreCounters& counters() const { return counters_; }

  std::string serialize() const;
  static StringStore deserialize(std::string_view blob);

 private:
  struct Node {
    StringHandle left = 0;
    StringHandle right = 0;
    std::uint32_t height = 0;
    std::uint8_t symbol = 0;
    std::uint64_t length = 0;
    std::uint64_t hash = 0;
    std::uint64_t power = 1;  // base^length
  };

  void check(StringHandle h) const;
  StringHandle make_leaf(std::uint8_t symbol);
  StringHandle make_node(StringHandle l, StringHandle r);
  StringHandle balance(StringHandle l, StringHandle r);
  StringHandle join(StringHandle a, StringHandle b);
  std::pair<StringHandle, StringHandle> split_at(StringHandle h, std::uint64_t index);
  int height(StringHandle h) const { return static_cast<int>(nodes_[h].height); }

  std::uint64_t seed_;
  std::uint64_t base_;
  std::vector<Node> nodes_;
  StringStoreCounters counters_;
};

/// Reference twin holding every string literally.
class StringStoreTwin {
 public:
  StringStoreTwin() : strings_{std::string()} {}
  StringHandle singleton(std::uint8_t symbol);
  StringHandle concat(StringHandle a, StringHandle b);
  std::pair<StringHandle, StringHandle> split(StringHandle h, std::size_t index);
  bool equal(StringHandle a, StringHandle b) const { return strings_.at(a) == strings_.at(b); }
  const std::string& text(StringHandle h) const { return strings_.at(h); }

 private:
  StringHandle add(std::string s);
  std::vector<std::string> strings_;
};

}  // namespace compact_ilp
