#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace compact_ilp {

using Edge = std::pair<std::size_t, std::size_t>;

/// Simple undirected graph on vertices 0..n-1.
///
/// Edges are stored once as (u, v) with u < v and sorted lexicographically;
/// the edge index used by protocols is the position in that list.
/// Adjacency lists are sorted.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adjacency_(n) {}

  /// Throws InvariantError on self-loops, parallel edges or unknown vertices.
  static Graph from_edges(std::size_t n, const std::vector<Edge>& edges);

  std::size_t num_vertices() const { return adjacency_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_[v]; }
  std::size_t degree(std::size_t v) const { return adjacency_[v].size(); }

  bool has_edge(std::size_t u, std::size_t v) const;
  std::optional<std::size_t> edge_index(std::size_t u, std::size_t v) const;

  /// Connected-component label per vertex, labels assigned in order of the
  /// smallest vertex of each component.
  std::vector<std::size_t> component_labels() const;
  std::size_t num_components() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

}  // namespace compact_ilp
