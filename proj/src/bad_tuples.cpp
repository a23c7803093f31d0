#include "compact_ilp/bad_tuples.hpp"

#include <algorithm>
#include <limits>

#include "compact_ilp/blob.hpp"
#include "compact_ilp/errors.hpp"

namespace compact_ilp {

std::vector<Rational> sorted_unique(std::vector<Rational> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

std::vector<Rational> midpoint_pool(const std::vector<Rational>& coords) {
  const auto distinct = sorted_unique(coords);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < distinct.size(); ++i)
    for (std::size_t j = i; j < distinct.size(); ++j) out.push_back((distinct[i] + distinct[j]) / 2);
  return sorted_unique(std::move(out));
}

std::vector<Rational> gap_pool(const std::vector<Rational>& coords) {
  const auto distinct = sorted_unique(coords);
  std::vector<Rational> out;
  for (std::size_t i = 0; i + 1 < distinct.size(); ++i) out.push_back((distinct[i] + distinct[i + 1]) / 2);
  return out;
}

namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

/// Thresholds of one coordinate against a pool: the closed range between
/// extended positions i1 and i2 holds it iff i1 <= first and i2 >= second.
std::pair<std::uint32_t, std::uint32_t> thresholds(const std::vector<Rational>& pool, const Rational& v) {
  const auto lo = std::lower_bound(pool.begin(), pool.end(), v);
  const auto below = static_cast<std::uint32_t>(lo - pool.begin());
  const bool present = lo != pool.end() && *lo == v;
  return {below + (present ? 1u : 0u), below + 1};
}

}  // namespace

std::uint64_t BadTupleIndex::pack(const BoxTuple& t) {
  return (std::uint64_t{t[0]} << 48) | (std::uint64_t{t[1]} << 32) | (std::uint64_t{t[2]} << 16) | t[3];
}

BadTupleIndex BadTupleIndex::build(const std::vector<Point>& w1, const std::vector<Point>& w2,
                                   std::vector<Rational> x_pool, std::vector<Rational> y_pool) {
  BadTupleIndex idx;
  idx.x_pool_ = sorted_unique(std::move(x_pool));
  idx.y_pool_ = sorted_unique(std::move(y_pool));
  const auto px = static_cast<std::uint32_t>(idx.x_pool_.size());
  const auto py = static_cast<std::uint32_t>(idx.y_pool_.size());
  if (px + 2 > 0xffff || py + 2 > 0xffff) throw CapacityError("bad-tuple index: pool too large");

  struct Marked {
    std::uint32_t ax, bx, ay, by;
    int color;
  };
  std::vector<Marked> pts;
  for (int color = 0; color < 2; ++color) {
    for (const auto& p : color == 0 ? w1 : w2) {
      auto [ax, bx] = thresholds(idx.x_pool_, p.x);
      auto [ay, by] = thresholds(idx.y_pool_, p.y);
      pts.push_back({ax, bx, ay, by, color});
    }
  }
  std::vector<std::uint32_t> suffix[2];
  for (std::uint32_t i1 = 0; i1 <= px + 1; ++i1) {
    for (std::uint32_t i2 = i1 + 1; i2 <= px + 1; ++i2) {
      for (auto& s : suffix) s.assign(py + 3, kUnset);
      bool any[2] = {false, false};
      for (const auto& p : pts) {
        if (i1 > p.ax || i2 < p.bx) continue;
        any[p.color] = true;
        auto& slot = suffix[p.color][p.ay];
        slot = std::min(slot, p.by);
      }
      if (!any[0] || !any[1]) continue;
      for (auto& s : suffix)
        for (std::uint32_t j = py + 1; j-- > 0;) s[j] = std::min(s[j], s[j + 1]);
      for (std::uint32_t j1 = 0; j1 <= py + 1; ++j1) {
        const std::uint32_t a = suffix[0][j1];
        const std::uint32_t b = suffix[1][j1];
        if (a == kUnset || b == kUnset) break;  // suffix minima only grow with j1
        const std::uint32_t from = std::max({a, b, j1 + 1});
        for (std::uint32_t j2 = from; j2 <= py + 1; ++j2) idx.keys_.push_back(pack({i1, i2, j1, j2}));
      }
    }
  }
  return idx;
}

bool BadTupleIndex::lookup(const BoxTuple& t) { return lookup(t, counters_); }

bool BadTupleIndex::lookup(const BoxTuple& t, BadTupleCounters& counters) const {
  ++counters.lookups;
  counters.steps += 1;
  for (std::size_t s = keys_.size(); s > 0; s /= 2) ++counters.steps;
  return std::binary_search(keys_.begin(), keys_.end(), pack(t));
}

ExtRational BadTupleIndex::x_at(std::uint32_t i) const {
  if (i == 0) return ExtRational::neg_inf();
  if (i > x_pool_.size()) return ExtRational::pos_inf();
  return ExtRational::finite(x_pool_[i - 1]);
}

ExtRational BadTupleIndex::y_at(std::uint32_t i) const {
  if (i == 0) return ExtRational::neg_inf();
  if (i > y_pool_.size()) return ExtRational::pos_inf();
  return ExtRational::finite(y_pool_[i - 1]);
}

std::vector<BoxTuple> BadTupleIndex::tuples() const {
  std::vector<BoxTuple> out;
  out.reserve(keys_.size());
  for (auto k : keys_)
    out.push_back({static_cast<std::uint32_t>(k >> 48), static_cast<std::uint32_t>((k >> 32) & 0xffff),
                   static_cast<std::uint32_t>((k >> 16) & 0xffff), static_cast<std::uint32_t>(k & 0xffff)});
  return out;
}

std::string BadTupleIndex::serialize() const {
  BlobWriter w("bad-tuple-index", 1);
  w.u64(x_pool_.size());
  for (const auto& q : x_pool_) w.rational(q);
  w.u64(y_pool_.size());
  for (const auto& q : y_pool_) w.rational(q);
  w.u64_list(keys_);
  return w.take();
}

BadTupleIndex BadTupleIndex::deserialize(std::string_view blob) {
  BlobReader r(blob, "bad-tuple-index", 1);
  BadTupleIndex idx;
  for (auto* pool : {&idx.x_pool_, &idx.y_pool_}) {
    const auto n = r.u64();
    if (n > blob.size()) throw ParseError("bad-tuple blob: pool length exceeds payload");
    for (std::uint64_t i = 0; i < n; ++i) pool->push_back(r.rational());
    if (!std::is_sorted(pool->begin(), pool->end()) ||
        std::adjacent_find(pool->begin(), pool->end()) != pool->end())
      throw ParseError("bad-tuple blob: pool not strictly increasing");
  }
  idx.keys_ = r.u64_list();
  r.expect_end();
  if (!std::is_sorted(idx.keys_.begin(), idx.keys_.end())) throw ParseError("bad-tuple blob: keys not sorted");
  return idx;
}

BadTupleTwin::BadTupleTwin(std::vector<Point> w1, std::vector<Point> w2, std::vector<Rational> x_pool,
                           std::vector<Rational> y_pool)
    : w1_(std::move(w1)),
      w2_(std::move(w2)),
      x_pool_(sorted_unique(std::move(x_pool))),
      y_pool_(sorted_unique(std::move(y_pool))) {}

ExtRational BadTupleTwin::at(const std::vector<Rational>& pool, std::uint32_t i) const {
  if (i == 0) return ExtRational::neg_inf();
  if (i > pool.size()) return ExtRational::pos_inf();
  return ExtRational::finite(pool[i - 1]);
}

bool BadTupleTwin::lookup(const BoxTuple& t) const {
  const ExtRational x1 = at(x_pool_, t[0]), x2 = at(x_pool_, t[1]);
  const ExtRational y1 = at(y_pool_, t[2]), y2 = at(y_pool_, t[3]);
  auto inside = [&](const Point& p) {
    const auto px = ExtRational::finite(p.x);
    const auto py = ExtRational::finite(p.y);
    return x1 <= px && px <= x2 && y1 <= py && py <= y2;
  };
  return std::any_of(w1_.begin(), w1_.end(), inside) && std::any_of(w2_.begin(), w2_.end(), inside);
}

}  // namespace compact_ilp
