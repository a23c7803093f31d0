#include "compact_ilp/string_store.hpp"

#include <algorithm>

#include "compact_ilp/blob.hpp"
#include "compact_ilp/errors.hpp"

namespace compact_ilp {

namespace {

constexpr std::uint64_t kMod = (std::uint64_t{1} << 61) - 1;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kMod);
  std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
  std::uint64_t s = lo + hi;
  if (s >= kMod) s -= kMod;
  return s;
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  if (s >= kMod) s -= kMod;
  return s;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

StringStore::StringStore(std::uint64_t seed) : seed_(seed), base_(splitmix(seed) % (kMod - 512) + 257) {
  nodes_.push_back(Node{});
}

void StringStore::check(StringHandle h) const {
  if (h >= nodes_.size()) throw DomainError("string store: unknown handle " + std::to_string(h));
}

StringHandle StringStore::make_leaf(std::uint8_t symbol) {
  Node n;
  n.height = 1;
  n.symbol = symbol;
  n.length = 1;
  n.hash = std::uint64_t{symbol} + 1;
  n.power = base_;
  nodes_.push_back(n);
  ++counters_.steps;
  return static_cast<StringHandle>(nodes_.size() - 1);
}

StringHandle StringStore::make_node(StringHandle l, StringHandle r) {
  const Node& a = nodes_[l];
  const Node& b = nodes_[r];
  Node n;
  n.left = l;
  n.right = r;
  n.height = std::max(a.height, b.height) + 1;
  n.length = a.length + b.length;
  n.hash = add_mod(mul_mod(a.hash, b.power), b.hash);
  n.power = mul_mod(a.power, b.power);
  nodes_.push_back(n);
  ++counters_.steps;
  return static_cast<StringHandle>(nodes_.size() - 1);
}

StringHandle StringStore::balance(StringHandle l, StringHandle r) {
  if (height(l) > height(r) + 1) {
    const Node ln = nodes_[l];
    if (height(ln.left) >= height(ln.right)) return make_node(ln.left, make_node(ln.right, r));
    const Node lr = nodes_[ln.right];
    return make_node(make_node(ln.left, lr.left), make_node(lr.right, r));
  }
  if (height(r) > height(l) + 1) {
    const Node rn = nodes_[r];
    if (height(rn.right) >= height(rn.left)) return make_node(make_node(l, rn.left), rn.right);
    const Node rl = nodes_[rn.left];
    return make_node(make_node(l, rl.left), make_node(rl.right, rn.right));
  }
  return make_node(l, r);
}

StringHandle StringStore::join(StringHandle a, StringHandle b) {
  if (a == 0) return b;
  if (b == 0) return a;
  ++counters_.steps;
  if (height(a) > height(b) + 1) {
    const Node an = nodes_[a];
    return balance(an.left, join(an.right, b));
  }
  if (height(b) > height(a) + 1) {
    const Node bn = nodes_[b];
    return balance(join(a, bn.left), bn.right);
  }
  return make_node(a, b);
}

std::pair<StringHandle, StringHandle> StringStore::split_at(StringHandle h, std::uint64_t index) {
  ++counters_.steps;
  const Node n = nodes_[h];
  if (index == 0) return {0, h};
  if (index == n.length) return {h, 0};
  const std::uint64_t left_len = nodes_[n.left].length;
  if (index <= left_len) {
    auto [a, b] = split_at(n.left, index);
    return {a, join(b, n.right)};
  }
  auto [a, b] = split_at(n.right, index - left_len);
  return {join(n.left, a), b};
}

StringHandle StringStore::singleton(std::uint8_t symbol) {
  ++counters_.singletons;
  return make_leaf(symbol);
}

StringHandle StringStore::concat(StringHandle a, StringHandle b) {
  ++counters_.concats;
  check(a);
  check(b);
  return join(a, b);
}

std::pair<StringHandle, StringHandle> StringStore::split(StringHandle h, std::size_t index) {
  ++counters_.splits;
  check(h);
  if (index > nodes_[h].length)
    throw DomainError("string store: split index " + std::to_string(index) + " outside [0, " +
                      std::to_string(nodes_[h].length) + "]");
  return split_at(h, index);
}

bool StringStore::equal(StringHandle a, StringHandle b) {
  ++counters_.equals;
  ++counters_.steps;
  check(a);
  check(b);
  return nodes_[a].length == nodes_[b].length && nodes_[a].hash == nodes_[b].hash;
}

StringHandle StringStore::build(std::string_view text) {
  StringHandle h = empty();
  for (unsigned char c : text) h = concat(h, singleton(c));
  return h;
}

std::size_t StringStore::length(StringHandle h) const {
  check(h);
  return nodes_[h].length;
}

std::string StringStore::materialize(StringHandle h) const {
  check(h);
  std::string out;
  std::vector<StringHandle> stack{h};
  while (!stack.empty()) {
    const StringHandle x = stack.back();
    stack.pop_back();
    if (x == 0) continue;
    const Node& n = nodes_[x];
    if (n.left == 0) {
      out.push_back(static_cast<char>(n.symbol));
    } else {
      stack.push_back(n.right);
      stack.push_back(n.left);
    }
  }
  return out;
}

std::string StringStore::serialize() const {
  BlobWriter w("string-store", 1);
  w.u64(seed_);
  std::vector<std::uint64_t> flat;
  flat.reserve(3 * nodes_.size());
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    flat.push_back(nodes_[i].left);
    flat.push_back(nodes_[i].right);
    flat.push_back(nodes_[i].symbol);
  }
  w.u64_list(flat);
  return w.take();
}

StringStore StringStore::deserialize(std::string_view blob) {
  BlobReader r(blob, "string-store", 1);
  StringStore s(r.u64());
  const auto flat = r.u64_list();
  r.expect_end();
  if (flat.size() % 3 != 0) throw ParseError("string store blob: node list length not a multiple of 3");
  for (std::size_t i = 0; i < flat.size(); i += 3) {
    const std::uint64_t l = flat[i], rr = flat[i + 1], sym = flat[i + 2];
    const std::size_t id = s.nodes_.size();
    if (l == 0 && rr == 0) {
      if (sym > 255) throw ParseError("string store blob: symbol out of range");
      s.make_leaf(static_cast<std::uint8_t>(sym));
    } else {
      if (l == 0 || rr == 0 || l >= id || rr >= id || sym != 0)
        throw ParseError("string store blob: malformed node " + std::to_string(id));
      s.make_node(static_cast<StringHandle>(l), static_cast<StringHandle>(rr));
    }
  }
  s.counters_ = {};
  return s;
}

StringHandle StringStoreTwin::add(std::string s) {
  strings_.push_back(std::move(s));
  return static_cast<StringHandle>(strings_.size() - 1);
}

StringHandle StringStoreTwin::singleton(std::uint8_t symbol) { return add(std::string(1, static_cast<char>(symbol))); }

StringHandle StringStoreTwin::concat(StringHandle a, StringHandle b) { return add(strings_.at(a) + strings_.at(b)); }

std::pair<StringHandle, StringHandle> StringStoreTwin::split(StringHandle h, std::size_t index) {
  const std::string s = strings_.at(h);
  if (index > s.size()) throw DomainError("string store: split index out of range");
  const StringHandle a = add(s.substr(0, index));
  const StringHandle b = add(s.substr(index));
  return {a, b};
}

}  // namespace compact_ilp
