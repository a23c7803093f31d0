#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "compact_ilp/graph.hpp"

namespace compact_ilp {

enum class FailureMode { Edge, Vertex };

struct OracleCounters {
  std::uint64_t updates = 0;
  std::uint64_t queries = 0;
  std::uint64_t steps = 0;
};

/// Replaces every edge e = (u, v) by a path u - (n + e) - v.
Graph subdivide(const Graph& g);

/// One-shot failure connectivity oracle.
///
/// After build, exactly one update installs a failure set D (vertex ids in
/// vertex mode, edge indices into g.edges() in edge mode, |D| <= d_max); then
/// query(u, v) answers whether u and v are connected in G - D. Edge mode runs
/// the vertex algorithm on the subdivided graph.
///
/// The update splits the DFS forest into the pieces left by removing D, then
/// joins pieces that share a non-tree edge, counted with a merge-sort tree over
/// (entry time, entry time) points. Copies share the immutable build.
class FailureOracle {
 public:
  static FailureOracle build(const Graph& g, FailureMode mode, std::size_t d_max);

  /// Throws UsageError on a second update, CapacityError when |D| > d_max and
  /// DomainError for unknown or repeated elements.
  void update(const std::vector<std::size_t>& failed);

  /// Throws UsageError before the update and DomainError for a failed or
  /// unknown vertex.
  bool query(std::size_t u, std::size_t v);

  bool updated() const { return updated_; }
  FailureMode mode() const;
  std::size_t d_max() const;
  std::size_t num_vertices() const;
  const std::vector<std::size_t>& component_labels() const;
  std::size_t num_components() const;
  const OracleCounters& counters() const { return counters_; }

  /// Serializes the built (fresh) oracle; throws UsageError once updated.
  std::string serialize() const;
  static FailureOracle deserialize(std::string_view blob);

 private:
  struct Build;
  std::size_t piece_of(std::size_t v);

  std::shared_ptr<const Build> build_;
  bool updated_ = false;
  std::vector<std::size_t> failed_;       // internal vertex ids, sorted by entry time
  std::vector<std::size_t> heads_;        // piece heads sorted by entry time
  std::vector<std::size_t> piece_parent_; // union-find over heads_
  std::vector<bool> tree_affected_;
  OracleCounters counters_;
};

/// Reference twin: stores D and answers every query by breadth-first search.
class ConnectivityTwin {
 public:
  ConnectivityTwin(Graph g, FailureMode mode, std::size_t d_max);
  void update(const std::vector<std::size_t>& failed);
  bool query(std::size_t u, std::size_t v);
  const OracleCounters& counters() const { return counters_; }

 private:
  Graph graph_;
  FailureMode mode_;
  std::size_t d_max_;
  bool updated_ = false;
  std::vector<bool> vertex_dead_;
  std::vector<bool> edge_dead_;
  OracleCounters counters_;
};

}  // namespace compact_ilp
