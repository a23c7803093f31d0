#include "compact_ilp/failure_oracle.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "compact_ilp/blob.hpp"
#include "compact_ilp/errors.hpp"

namespace compact_ilp {

Graph subdivide(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<Edge> edges;
  edges.reserve(2 * g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    edges.emplace_back(g.edges()[e].first, n + e);
    edges.emplace_back(g.edges()[e].second, n + e);
  }
  return Graph::from_edges(n + g.num_edges(), edges);
}

namespace {
constexpr std::size_t kNone = static_cast<std::size_t>(-1);
}

struct FailureOracle::Build {
  Graph base;
  FailureMode mode = FailureMode::Vertex;
  std::size_t d_max = 0;
  std::vector<std::size_t> labels;
  std::size_t components = 0;

  // DFS forest of the working graph (the subdivision in edge mode).
  std::vector<std::size_t> tin, tout, depth, tree_of, roots;
  std::vector<std::vector<std::size_t>> children;

  // Merge-sort tree over (tin a, tin b) for every non-tree edge, both ways.
  std::vector<std::size_t> xs;
  std::size_t leaves = 1;
  std::vector<std::vector<std::size_t>> nodes;

  void build_forest(const Graph& h) {
    const std::size_t n = h.num_vertices();
    tin.assign(n, kNone);
    tout.assign(n, 0);
    depth.assign(n, 0);
    tree_of.assign(n, kNone);
    children.assign(n, {});
    std::vector<std::size_t> parent(n, kNone);
    std::size_t clock = 0;
    std::vector<std::pair<std::size_t, std::size_t>> stack;
    for (std::size_t s = 0; s < n; ++s) {
      if (tin[s] != kNone) continue;
      const std::size_t tree = roots.size();
      roots.push_back(s);
      tin[s] = clock++;
      tree_of[s] = tree;
      stack.emplace_back(s, 0);
      while (!stack.empty()) {
        auto& [v, it] = stack.back();
        const auto& nb = h.neighbors(v);
        if (it < nb.size()) {
          const std::size_t w = nb[it++];
          if (tin[w] != kNone) continue;
          parent[w] = v;
          depth[w] = depth[v] + 1;
          tree_of[w] = tree;
          tin[w] = clock++;
          children[v].push_back(w);
          stack.emplace_back(w, 0);
        } else {
          tout[v] = clock - 1;
          stack.pop_back();
        }
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> points;
    for (auto [a, b] : h.edges()) {
      if (parent[a] == b || parent[b] == a) continue;
      points.emplace_back(tin[a], tin[b]);
      points.emplace_back(tin[b], tin[a]);
    }
    std::sort(points.begin(), points.end());
    while (leaves < points.size()) leaves *= 2;
    nodes.assign(2 * leaves, {});
    for (std::size_t i = 0; i < points.size(); ++i) {
      xs.push_back(points[i].first);
      nodes[leaves + i].push_back(points[i].second);
    }
    for (std::size_t i = leaves; i-- > 1;) {
      std::merge(nodes[2 * i].begin(), nodes[2 * i].end(), nodes[2 * i + 1].begin(), nodes[2 * i + 1].end(),
                 std::back_inserter(nodes[i]));
    }
  }

  /// Non-tree edge endpoints with tin a in [x1, x2] and tin b in [y1, y2].
  std::size_t count(std::size_t x1, std::size_t x2, std::size_t y1, std::size_t y2, std::uint64_t& steps) const {
    std::size_t l = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), x1) - xs.begin()) + leaves;
    std::size_t r = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x2) - xs.begin()) + leaves;
    std::size_t total = 0;
    auto in_node = [&](std::size_t i) {
      ++steps;
      const auto& ys = nodes[i];
      return static_cast<std::size_t>(std::upper_bound(ys.begin(), ys.end(), y2) -
                                      std::lower_bound(ys.begin(), ys.end(), y1));
    };
    while (l < r) {
      if (l & 1) total += in_node(l++);
      if (r & 1) total += in_node(--r);
      l >>= 1;
      r >>= 1;
    }
    return total;
  }
};

FailureOracle FailureOracle::build(const Graph& g, FailureMode mode, std::size_t d_max) {
  auto b = std::make_shared<Build>();
  b->base = g;
  b->mode = mode;
  b->d_max = d_max;
  b->labels = g.component_labels();
  b->components = g.num_components();
  if (mode == FailureMode::Edge) {
    b->build_forest(subdivide(g));
  } else {
    b->build_forest(g);
  }
  FailureOracle o;
  o.build_ = std::move(b);
  o.tree_affected_.assign(o.build_->roots.size(), false);
  return o;
}

FailureMode FailureOracle::mode() const { return build_->mode; }
std::size_t FailureOracle::d_max() const { return build_->d_max; }
std::size_t FailureOracle::num_vertices() const { return build_->base.num_vertices(); }
const std::vector<std::size_t>& FailureOracle::component_labels() const { return build_->labels; }
std::size_t FailureOracle::num_components() const { return build_->components; }

void FailureOracle::update(const std::vector<std::size_t>& failed) {
  ++counters_.updates;
  if (updated_) throw UsageError("failure oracle: update may be performed only once");
  if (failed.size() > build_->d_max)
    throw CapacityError("failure oracle: " + std::to_string(failed.size()) + " failures exceed capacity " +
                        std::to_string(build_->d_max));
  const Build& b = *build_;
  const std::size_t n = b.base.num_vertices();
  const std::size_t limit = b.mode == FailureMode::Edge ? b.base.num_edges() : n;
  failed_.clear();
  for (auto x : failed) {
    ++counters_.steps;
    if (x >= limit)
      throw DomainError(std::string("failure oracle: unknown ") + (b.mode == FailureMode::Edge ? "edge " : "vertex ") +
                        std::to_string(x));
    failed_.push_back(b.mode == FailureMode::Edge ? n + x : x);
  }
  std::sort(failed_.begin(), failed_.end(), [&](auto a, auto c) { return b.tin[a] < b.tin[c]; });
  if (std::adjacent_find(failed_.begin(), failed_.end()) != failed_.end())
    throw DomainError("failure oracle: repeated element in failure set");
  updated_ = true;

  auto is_failed = [&](std::size_t v) {
    ++counters_.steps;
    return std::binary_search(failed_.begin(), failed_.end(), v,
                              [&](auto a, auto c) { return b.tin[a] < b.tin[c]; });
  };
  heads_.clear();
  for (auto f : failed_) tree_affected_[b.tree_of[f]] = true;
  for (std::size_t t = 0; t < b.roots.size(); ++t)
    if (tree_affected_[t] && !is_failed(b.roots[t])) heads_.push_back(b.roots[t]);
  for (auto f : failed_)
    for (auto c : b.children[f])
      if (!is_failed(c)) heads_.push_back(c);
  std::sort(heads_.begin(), heads_.end(), [&](auto a, auto c) { return b.tin[a] < b.tin[c]; });

  // Each piece is its head's subtree minus the subtrees of failed descendants.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> intervals(heads_.size());
  for (std::size_t i = 0; i < heads_.size(); ++i) {
    const std::size_t h = heads_[i];
    std::size_t cursor = b.tin[h];
    for (auto f : failed_) {
      ++counters_.steps;
      if (b.tin[f] <= b.tin[h] || b.tin[f] > b.tout[h] || b.tin[f] < cursor) continue;
      if (b.tin[f] > cursor) intervals[i].emplace_back(cursor, b.tin[f] - 1);
      cursor = b.tout[f] + 1;
    }
    if (cursor <= b.tout[h]) intervals[i].emplace_back(cursor, b.tout[h]);
  }
  piece_parent_.resize(heads_.size());
  std::iota(piece_parent_.begin(), piece_parent_.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (piece_parent_[x] != x) {
      piece_parent_[x] = piece_parent_[piece_parent_[x]];
      x = piece_parent_[x];
    }
    return x;
  };
  for (std::size_t i = 0; i < heads_.size(); ++i) {
    for (std::size_t j = i + 1; j < heads_.size(); ++j) {
      if (b.tree_of[heads_[i]] != b.tree_of[heads_[j]]) continue;
      if (find(i) == find(j)) continue;
      bool linked = false;
      for (auto [x1, x2] : intervals[i]) {
        for (auto [y1, y2] : intervals[j]) {
          if (b.count(x1, x2, y1, y2, counters_.steps) > 0) {
            linked = true;
            break;
          }
        }
        if (linked) break;
      }
      if (linked) piece_parent_[find(i)] = find(j);
    }
  }
}

std::size_t FailureOracle::piece_of(std::size_t v) {
  const Build& b = *build_;
  std::size_t deepest = kNone;
  for (auto f : failed_) {
    ++counters_.steps;
    if (b.tin[f] <= b.tin[v] && b.tin[v] <= b.tout[f] && (deepest == kNone || b.depth[f] > b.depth[deepest]))
      deepest = f;
  }
  std::size_t head = b.roots[b.tree_of[v]];
  if (deepest != kNone) {
    const auto& ch = b.children[deepest];
    auto it = std::upper_bound(ch.begin(), ch.end(), b.tin[v], [&](std::size_t t, std::size_t c) { return t < b.tin[c]; });
    head = *std::prev(it);
    ++counters_.steps;
  }
  auto it = std::lower_bound(heads_.begin(), heads_.end(), head,
                             [&](auto a, auto c) { return b.tin[a] < b.tin[c]; });
  ++counters_.steps;
  std::size_t x = static_cast<std::size_t>(it - heads_.begin());
  while (piece_parent_[x] != x) x = piece_parent_[x];
  return x;
}

bool FailureOracle::query(std::size_t u, std::size_t v) {
  ++counters_.queries;
  ++counters_.steps;
  if (!updated_) throw UsageError("failure oracle: query before update");
  const Build& b = *build_;
  const std::size_t n = b.base.num_vertices();
  if (u >= n || v >= n) throw DomainError("failure oracle: unknown vertex");
  if (b.mode == FailureMode::Vertex) {
    for (auto f : failed_)
      if (f == u || f == v) throw DomainError("failure oracle: query names failed vertex " + std::to_string(f));
  }
  if (u == v) return true;
  if (b.tree_of[u] != b.tree_of[v]) return false;
  if (!tree_affected_[b.tree_of[u]]) return true;
  return piece_of(u) == piece_of(v);
}

std::string FailureOracle::serialize() const {
  if (updated_) throw UsageError("failure oracle: only a fresh oracle can be serialized");
  const Build& b = *build_;
  BlobWriter w("failure-oracle", 1);
  w.u64(b.mode == FailureMode::Edge ? 0 : 1);
  w.u64(b.d_max);
  w.u64(b.base.num_vertices());
  std::vector<std::uint64_t> flat;
  for (auto [x, y] : b.base.edges()) {
    flat.push_back(x);
    flat.push_back(y);
  }
  w.u64_list(flat);
  return w.take();
}

FailureOracle FailureOracle::deserialize(std::string_view blob) {
  BlobReader r(blob, "failure-oracle", 1);
  const auto mode_tag = r.u64();
  if (mode_tag > 1) throw ParseError("failure oracle blob: bad mode");
  const auto d_max = r.u64();
  const auto n = r.u64();
  const auto flat = r.u64_list();
  r.expect_end();
  if (flat.size() % 2 != 0) throw ParseError("failure oracle blob: odd edge list");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < flat.size(); i += 2) edges.emplace_back(flat[i], flat[i + 1]);
  return build(Graph::from_edges(n, edges), mode_tag == 0 ? FailureMode::Edge : FailureMode::Vertex, d_max);
}

ConnectivityTwin::ConnectivityTwin(Graph g, FailureMode mode, std::size_t d_max)
    : graph_(std::move(g)), mode_(mode), d_max_(d_max) {
  vertex_dead_.assign(graph_.num_vertices(), false);
  edge_dead_.assign(graph_.num_edges(), false);
}

void ConnectivityTwin::update(const std::vector<std::size_t>& failed) {
  ++counters_.updates;
  if (updated_) throw UsageError("failure oracle: update may be performed only once");
  if (failed.size() > d_max_) throw CapacityError("failure oracle: failure set exceeds capacity");
  auto& dead = mode_ == FailureMode::Edge ? edge_dead_ : vertex_dead_;
  for (auto x : failed) {
    ++counters_.steps;
    if (x >= dead.size()) throw DomainError("failure oracle: unknown element " + std::to_string(x));
    if (dead[x]) throw DomainError("failure oracle: repeated element in failure set");
    dead[x] = true;
  }
  updated_ = true;
}

bool ConnectivityTwin::query(std::size_t u, std::size_t v) {
  ++counters_.queries;
  if (!updated_) throw UsageError("failure oracle: query before update");
  if (u >= graph_.num_vertices() || v >= graph_.num_vertices()) throw DomainError("failure oracle: unknown vertex");
  if (vertex_dead_[u] || vertex_dead_[v]) throw DomainError("failure oracle: query names a failed vertex");
  std::vector<bool> seen(graph_.num_vertices(), false);
  std::deque<std::size_t> queue{u};
  seen[u] = true;
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    ++counters_.steps;
    if (x == v) return true;
    for (auto y : graph_.neighbors(x)) {
      if (seen[y] || vertex_dead_[y]) continue;
      if (mode_ == FailureMode::Edge && edge_dead_[*graph_.edge_index(x, y)]) continue;
      seen[y] = true;
      queue.push_back(y);
    }
  }
  return false;
}

}  // namespace compact_ilp
