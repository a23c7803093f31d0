#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "compact_ilp/graph.hpp"

namespace compact_ilp {

struct PathTableCounters {
  std::uint64_t length_lookups = 0;
  std::uint64_t disjoint_lookups = 0;
  std::uint64_t label_lookups = 0;

  std::uint64_t lookups() const { return length_lookups + disjoint_lookups + label_lookups; }
};

/// Precomputed path data for every tree of a forest.
///
/// For vertices v1, v2 of one tree, length(v1, v2) = |V(P(v1, v2))|. For two
/// paths of one tree, disjoint(...) tells whether their vertex sets are
/// disjoint; the bit table is indexed by unordered endpoint pairs.
class TreePathTables {
 public:
  /// Throws InvariantError if the graph has a cycle.
  static TreePathTables build(const Graph& forest);

  std::size_t num_vertices() const { return component_.size(); }
  std::size_t label(std::size_t v);
  /// Both endpoints must share a tree; DomainError otherwise.
  std::size_t length(std::size_t v1, std::size_t v2);
  bool disjoint(std::size_t v1, std::size_t v2, std::size_t u1, std::size_t u2);

  /// Const lookups charging an external counter, for shared read-only tables.
  std::size_t label(std::size_t v, PathTableCounters& c) const;
  std::size_t length(std::size_t v1, std::size_t v2, PathTableCounters& c) const;
  bool disjoint(std::size_t v1, std::size_t v2, std::size_t u1, std::size_t u2, PathTableCounters& c) const;

  const PathTableCounters& counters() const { return counters_; }

  std::string serialize() const;
  static TreePathTables deserialize(std::string_view blob);

  friend bool operator==(const TreePathTables& a, const TreePathTables& b) {
    return a.component_ == b.component_ && a.local_ == b.local_ && a.sizes_ == b.sizes_ && a.lengths_ == b.lengths_ &&
           a.disjoint_ == b.disjoint_;
  }

 private:
  std::size_t pair_index(std::size_t a, std::size_t b) const;
  void check_same(std::size_t a, std::size_t b) const;

  std::vector<std::size_t> component_;           // tree label per vertex
  std::vector<std::size_t> local_;               // index within its tree
  std::vector<std::size_t> sizes_;               // vertices per tree
  std::vector<std::vector<std::uint32_t>> lengths_;  // per tree, size x size
  std::vector<std::vector<std::uint64_t>> disjoint_; // per tree, pairs^2 bits
  PathTableCounters counters_;
};

/// Reference twin: extracts the explicit paths on every call.
class PathTablesTwin {
 public:
  explicit PathTablesTwin(Graph forest);
  std::size_t length(std::size_t v1, std::size_t v2) const;
  bool disjoint(std::size_t v1, std::size_t v2, std::size_t u1, std::size_t u2) const;
  std::vector<std::size_t> path(std::size_t a, std::size_t b) const;

 private:
  Graph forest_;
};

}  // namespace compact_ilp
