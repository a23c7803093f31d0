#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "compact_ilp/numeric.hpp"

namespace compact_ilp {

enum class Sense { LessEq, Eq };

struct Entry {
  std::size_t row = 0;
  std::size_t col = 0;
  BigInt coef;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sparse integer (or mixed) program  A x (<= | =) b,  lower <= x <= upper.
///
/// All rows share one sense; ">=" rows are negated on ingest. Entries are kept
/// sorted row-major and must not repeat a coordinate. An absent upper bound
/// means +infinity.
struct IntegerProgram {
  std::size_t num_constraints = 0;
  std::size_t num_vars = 0;
  std::vector<Entry> entries;
  std::vector<BigInt> rhs;
  Sense sense = Sense::LessEq;
  std::vector<BigInt> lower;
  std::vector<std::optional<BigInt>> upper;
  std::vector<bool> integral;
  std::optional<std::vector<BigInt>> objective;

  /// Program with m rows, n integral non-negative unbounded variables and b = 0.
  static IntegerProgram standard(std::size_t m, std::size_t n, Sense sense = Sense::LessEq);

  /// Adds (or accumulates into) coefficient (row, col). Zero sums are dropped.
  void add(std::size_t row, std::size_t col, const BigInt& coef);

  /// Sorts entries row-major and drops explicit zeros.
  void canonicalize();

  /// Throws InvariantError naming the first offending coordinate.
  void validate() const;

  bool is_standard_without_upper_bounds() const;
  bool is_binary() const;
  bool all_integral() const;
  bool has_finite_upper_bounds() const;
  std::size_t integral_count() const;

  /// Row-major dense copy of A.
  std::vector<std::vector<BigInt>> dense() const;

  /// The sense is ignored when m = 0, and an all-zero objective equals none.
  friend bool operator==(const IntegerProgram& a, const IntegerProgram& b) {
    auto effective = [](const IntegerProgram& p) {
      if (p.objective && std::any_of(p.objective->begin(), p.objective->end(), [](const BigInt& c) { return c != 0; }))
        return p.objective;
      return std::optional<std::vector<BigInt>>{};
    };
    return a.num_constraints == b.num_constraints && a.num_vars == b.num_vars && a.entries == b.entries &&
           a.rhs == b.rhs && (a.num_constraints == 0 || a.sense == b.sense) && a.lower == b.lower &&
           a.upper == b.upper && a.integral == b.integral && effective(a) == effective(b);
  }
};

struct DeltaStats {
  BigInt delta_a;
  BigInt b_inf_norm;
};

DeltaStats compute_delta(const IntegerProgram& p);

/// Adds one +1 slack column per row: (A x <= b) becomes (A x + s = b).
/// Requires standard form without upper bounds and sense LessEq.
IntegerProgram to_equality_form(const IntegerProgram& p);

/// Checks x against every row, bound and integrality flag exactly.
bool satisfies(const IntegerProgram& p, const std::vector<BigInt>& x);
bool satisfies(const IntegerProgram& p, const std::vector<Rational>& x);

}  // namespace compact_ilp
