#pragma once

#include <cstddef>
#include <vector>

#include "compact_ilp/graph.hpp"
#include "compact_ilp/integer_program.hpp"

namespace compact_ilp {

/// Universe 0..u-1, a family of subsets, and a budget l.
struct SetCoverInstance {
  std::size_t universe_size = 0;
  std::vector<std::vector<std::size_t>> sets;  // each sorted, duplicate-free
  std::size_t budget = 0;

  /// Throws InvariantError for out-of-universe or repeated elements.
  void validate() const;

  friend bool operator==(const SetCoverInstance&, const SetCoverInstance&) = default;
};

/// One variable per set; u covering rows (written as -sum x_F <= -1) and one
/// budget row sum x_F <= l. With `binary`, every variable gets upper bound 1.
IntegerProgram set_cover_to_ilp(const SetCoverInstance& inst, bool binary);

struct WvcInstance {
  Graph graph;
  std::vector<BigInt> weights;
  BigInt budget = 0;
  /// Weights are unary in spirit; magnitudes above this cap are rejected.
  BigInt weight_cap = 1'000'000;

  void validate() const;

  friend bool operator==(const WvcInstance&, const WvcInstance&) = default;
};

struct VcWitnessSet {
  std::vector<std::size_t> vertices;  // sorted
  bool is_cover = false;
};

/// Recomputes the cover flag of an arbitrary vertex list.
VcWitnessSet make_witness_set(const Graph& g, std::vector<std::size_t> vertices);

/// Maximal-matching 2-approximation over edges in sorted order.
VcWitnessSet vc_2approx(const Graph& g);

/// Rows, for every u in Y:  sum_{v in N(u)} x_v + deg(u) x_u >= deg(u),
/// then the budget row  sum_v w(v) x_v <= l.  All x_v lie in [0, 1] and
/// exactly the vertices of Y are integral. ">=" rows are stored negated.
/// Throws InvariantError naming an uncovered edge if Y is not a cover.
IntegerProgram wvc_to_milp(const WvcInstance& inst, const VcWitnessSet& cover);

/// Same rows with every variable integral.
IntegerProgram wvc_to_binary_ilp(const WvcInstance& inst, const VcWitnessSet& cover);

/// Entry-size record for the WVC programs: delta(A) against max(W, n).
struct WvcEntryAudit {
  BigInt delta;
  std::size_t n = 0;
  BigInt max_weight = 0;
  bool within_bound = false;  // delta <= max(max_weight, n)
};

WvcEntryAudit wvc_entry_audit(const WvcInstance& inst, const IntegerProgram& program);

/// Vertices whose value in the certificate is exactly 1.
std::vector<std::size_t> extract_cover(const std::vector<Rational>& certificate);

}  // namespace compact_ilp
