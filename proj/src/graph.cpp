#include "compact_ilp/graph.hpp"

#include <algorithm>
#include <string>

#include "compact_ilp/errors.hpp"

namespace compact_ilp {

Graph Graph::from_edges(std::size_t n, const std::vector<Edge>& edges) {
  Graph g(n);
  g.edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= n || v >= n)
      throw InvariantError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") names an unknown vertex");
    if (u == v) throw InvariantError("self-loop at vertex " + std::to_string(u));
    g.edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  for (std::size_t i = 1; i < g.edges_.size(); ++i) {
    if (g.edges_[i] == g.edges_[i - 1])
      throw InvariantError("parallel edge (" + std::to_string(g.edges_[i].first) + "," +
                           std::to_string(g.edges_[i].second) + ")");
  }
  for (auto [u, v] : g.edges_) {
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (auto& list : g.adjacency_) std::sort(list.begin(), list.end());
  return g;
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
  if (u >= adjacency_.size() || v >= adjacency_.size()) return false;
  return std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
}

std::optional<std::size_t> Graph::edge_index(std::size_t u, std::size_t v) const {
  const Edge key{std::min(u, v), std::max(u, v)};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

std::vector<std::size_t> Graph::component_labels() const {
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(adjacency_.size(), none);
  std::vector<std::size_t> stack;
  std::size_t next = 0;
  for (std::size_t s = 0; s < adjacency_.size(); ++s) {
    if (label[s] != none) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (auto w : adjacency_[v]) {
        if (label[w] == none) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

std::size_t Graph::num_components() const {
  const auto labels = component_labels();
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

}  // namespace compact_ilp
