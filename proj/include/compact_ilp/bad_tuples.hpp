#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "compact_ilp/numeric.hpp"

namespace compact_ilp {

/// Rational extended by -inf and +inf.
struct ExtRational {
  enum class Kind { NegInf, Finite, PosInf };
  Kind kind = Kind::Finite;
  Rational value = 0;

  static ExtRational neg_inf() { return {Kind::NegInf, 0}; }
  static ExtRational pos_inf() { return {Kind::PosInf, 0}; }
  static ExtRational finite(Rational q) { return {Kind::Finite, std::move(q)}; }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    return a.kind == b.kind && (a.kind != Kind::Finite || a.value == b.value);
  }
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) <=> static_cast<int>(b.kind);
    if (a.kind != Kind::Finite || a.value == b.value) return std::strong_ordering::equal;
    return a.value < b.value ? std::strong_ordering::less : std::strong_ordering::greater;
  }
};

struct Point {
  Rational x;
  Rational y;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Sorted, duplicate-free pool values.
std::vector<Rational> sorted_unique(std::vector<Rational> values);
/// All pairwise averages (a + b) / 2 of the given coordinates, a == b included.
std::vector<Rational> midpoint_pool(const std::vector<Rational>& coords);
/// Averages of consecutive distinct coordinates only.
std::vector<Rational> gap_pool(const std::vector<Rational>& coords);

/// Tuple over pool positions: 0 is -inf, 1..P are pool entries, P+1 is +inf.
using BoxTuple = std::array<std::uint32_t, 4>;  // (x1, x2, y1, y2)

struct BadTupleCounters {
  std::uint64_t lookups = 0;
  std::uint64_t steps = 0;
};

/// Sorted list of every tuple x1 < x2, y1 < y2 whose closed box
/// [x1, x2] x [y1, y2] holds a point of W1 and a point of W2.
class BadTupleIndex {
 public:
  static BadTupleIndex build(const std::vector<Point>& w1, const std::vector<Point>& w2,
                             std::vector<Rational> x_pool, std::vector<Rational> y_pool);

  /// Binary search; counts ceil(log2(size + 1)) steps.
  bool lookup(const BoxTuple& t);
  bool lookup(const BoxTuple& t, BadTupleCounters& counters) const;

  const std::vector<Rational>& x_pool() const { return x_pool_; }
  const std::vector<Rational>& y_pool() const { return y_pool_; }
  ExtRational x_at(std::uint32_t i) const;
  ExtRational y_at(std::uint32_t i) const;
  std::size_t size() const { return keys_.size(); }
  std::vector<BoxTuple> tuples() const;
  const BadTupleCounters& counters() const { return counters_; }

  std::string serialize() const;
  static BadTupleIndex deserialize(std::string_view blob);

  static std::uint64_t pack(const BoxTuple& t);

 private:
  std::vector<Rational> x_pool_;
  std::vector<Rational> y_pool_;
  std::vector<std::uint64_t> keys_;  // packed tuples, sorted
  BadTupleCounters counters_;
};

/// Reference twin: tests the box against every point on each call.
class BadTupleTwin {
 public:
  BadTupleTwin(std::vector<Point> w1, std::vector<Point> w2, std::vector<Rational> x_pool,
               std::vector<Rational> y_pool);
  bool lookup(const BoxTuple& t) const;

 private:
  ExtRational at(const std::vector<Rational>& pool, std::uint32_t i) const;
  std::vector<Point> w1_, w2_;
  std::vector<Rational> x_pool_, y_pool_;
};

}  // namespace compact_ilp
