#include "compact_ilp/path_tables.hpp"

#include <algorithm>
#include <deque>

#include "compact_ilp/blob.hpp"
#include "compact_ilp/errors.hpp"

namespace compact_ilp {

namespace {
constexpr std::size_t kNone = static_cast<std::size_t>(-1);
}

std::size_t TreePathTables::pair_index(std::size_t a, std::size_t b) const {
  if (a > b) std::swap(a, b);
  return b * (b + 1) / 2 + a;
}

TreePathTables TreePathTables::build(const Graph& forest) {
  const std::size_t n = forest.num_vertices();
  TreePathTables t;
  t.component_ = forest.component_labels();
  t.local_.assign(n, kNone);
  const std::size_t trees = n == 0 ? 0 : *std::max_element(t.component_.begin(), t.component_.end()) + 1;
  t.sizes_.assign(trees, 0);
  std::vector<std::size_t> edges_per_tree(trees, 0);
  for (auto [a, b] : forest.edges()) ++edges_per_tree[t.component_[a]];

  std::vector<bool> seen(n, false);
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    const std::size_t tree = t.component_[root];
    // BFS order doubles as the local numbering, so parents precede children.
    std::vector<std::size_t> order{root};
    std::vector<std::size_t> parent_local{kNone};
    std::vector<std::size_t> depth{0};
    seen[root] = true;
    t.local_[root] = 0;
    for (std::size_t head = 0; head < order.size(); ++head) {
      for (auto w : forest.neighbors(order[head])) {
        if (seen[w]) continue;
        seen[w] = true;
        t.local_[w] = order.size();
        order.push_back(w);
        parent_local.push_back(head);
        depth.push_back(depth[head] + 1);
      }
    }
    const std::size_t c = order.size();
    t.sizes_[tree] = c;
    if (edges_per_tree[tree] != c - 1)
      throw InvariantError("path tables: input has a cycle through vertex " + std::to_string(root));

    std::vector<std::uint32_t> lca(c * c);
    for (std::size_t a = 0; a < c; ++a) {
      for (std::size_t b = 0; b < c; ++b) {
        std::uint32_t z;
        if (a == b) {
          z = static_cast<std::uint32_t>(a);
        } else if (depth[a] > depth[b]) {
          z = lca[parent_local[a] * c + b];
        } else if (depth[b] > depth[a]) {
          z = lca[a * c + parent_local[b]];
        } else {
          z = lca[parent_local[a] * c + parent_local[b]];
        }
        lca[a * c + b] = z;
      }
    }
    std::vector<std::uint32_t> dist(c * c);
    for (std::size_t a = 0; a < c; ++a)
      for (std::size_t b = 0; b < c; ++b)
        dist[a * c + b] = static_cast<std::uint32_t>(depth[a] + depth[b] - 2 * depth[lca[a * c + b]]);
    std::vector<std::uint32_t> lengths(c * c);
    for (std::size_t i = 0; i < c * c; ++i) lengths[i] = dist[i] + 1;
    t.lengths_.push_back(std::move(lengths));

    auto on_path = [&](std::size_t x, std::size_t a, std::size_t b) {
      return dist[a * c + x] + dist[x * c + b] == dist[a * c + b];
    };
    const std::size_t pairs = c * (c + 1) / 2;
    std::vector<std::size_t> pa(pairs), pb(pairs);
    for (std::size_t b = 0; b < c; ++b)
      for (std::size_t a = 0; a <= b; ++a) {
        pa[b * (b + 1) / 2 + a] = a;
        pb[b * (b + 1) / 2 + a] = b;
      }
    std::vector<std::uint64_t> bits((pairs * pairs + 63) / 64, 0);
    for (std::size_t p = 0; p < pairs; ++p) {
      const std::size_t zp = lca[pa[p] * c + pb[p]];
      for (std::size_t q = 0; q < pairs; ++q) {
        const std::size_t zq = lca[pa[q] * c + pb[q]];
        const bool meet = on_path(zp, pa[q], pb[q]) || on_path(zq, pa[p], pb[p]);
        if (!meet) bits[(p * pairs + q) / 64] |= std::uint64_t{1} << ((p * pairs + q) % 64);
      }
    }
    t.disjoint_.push_back(std::move(bits));
  }
  return t;
}

void TreePathTables::check_same(std::size_t a, std::size_t b) const {
  if (a >= component_.size() || b >= component_.size())
    throw DomainError("path tables: unknown vertex");
  if (component_[a] != component_[b])
    throw DomainError("path tables: vertices " + std::to_string(a) + " and " + std::to_string(b) +
                      " lie in different trees");
}

std::size_t TreePathTables::label(std::size_t v) { return label(v, counters_); }

std::size_t TreePathTables::length(std::size_t v1, std::size_t v2) { return length(v1, v2, counters_); }

bool TreePathTables::disjoint(std::size_t v1, std::size_t v2, std::size_t u1, std::size_t u2) {
  return disjoint(v1, v2, u1, u2, counters_);
}

std::size_t TreePathTables::label(std::size_t v, PathTableCounters& counters) const {
  ++counters.label_lookups;
  if (v >= component_.size()) throw DomainError("path tables: unknown vertex " + std::to_string(v));
  return component_[v];
}

std::size_t TreePathTables::length(std::size_t v1, std::size_t v2, PathTableCounters& counters) const {
  ++counters.length_lookups;
  check_same(v1, v2);
  const std::size_t tree = component_[v1];
  return lengths_[tree][local_[v1] * sizes_[tree] + local_[v2]];
}

bool TreePathTables::disjoint(std::size_t v1, std::size_t v2, std::size_t u1, std::size_t u2,
                              PathTableCounters& counters) const {
  ++counters.disjoint_lookups;
  check_same(v1, v2);
  check_same(u1, u2);
  check_same(v1, u1);
  const std::size_t tree = component_[v1];
  const std::size_t c = sizes_[tree];
  const std::size_t pairs = c * (c + 1) / 2;
  const std::size_t bit = pair_index(local_[v1], local_[v2]) * pairs + pair_index(local_[u1], local_[u2]);
  return (disjoint_[tree][bit / 64] >> (bit % 64)) & 1;
}

std::string TreePathTables::serialize() const {
  BlobWriter w("tree-path-tables", 1);
  auto widen = [](const auto& v) { return std::vector<std::uint64_t>(v.begin(), v.end()); };
  w.u64_list(widen(component_));
  w.u64_list(widen(local_));
  w.u64_list(widen(sizes_));
  for (std::size_t tree = 0; tree < sizes_.size(); ++tree) {
    w.u64_list(widen(lengths_[tree]));
    w.u64_list(disjoint_[tree]);
  }
  return w.take();
}

TreePathTables TreePathTables::deserialize(std::string_view blob) {
  BlobReader r(blob, "tree-path-tables", 1);
  TreePathTables t;
  auto narrow = [](const std::vector<std::uint64_t>& v) { return std::vector<std::size_t>(v.begin(), v.end()); };
  t.component_ = narrow(r.u64_list());
  t.local_ = narrow(r.u64_list());
  t.sizes_ = narrow(r.u64_list());
  if (t.local_.size() != t.component_.size()) throw ParseError("path tables blob: label/index size mismatch");
  for (std::size_t tree = 0; tree < t.sizes_.size(); ++tree) {
    const std::size_t c = t.sizes_[tree];
    const auto lens = r.u64_list();
    if (lens.size() != c * c) throw ParseError("path tables blob: length table has wrong size");
    t.lengths_.emplace_back(lens.begin(), lens.end());
    auto bits = r.u64_list();
    const std::size_t pairs = c * (c + 1) / 2;
    if (bits.size() != (pairs * pairs + 63) / 64) throw ParseError("path tables blob: disjointness table has wrong size");
    t.disjoint_.push_back(std::move(bits));
  }
  r.expect_end();
  for (std::size_t v = 0; v < t.component_.size(); ++v) {
    if (t.component_[v] >= t.sizes_.size() || t.local_[v] >= t.sizes_[t.component_[v]])
      throw ParseError("path tables blob: vertex " + std::to_string(v) + " has an invalid position");
  }
  return t;
}

PathTablesTwin::PathTablesTwin(Graph forest) : forest_(std::move(forest)) {}

std::vector<std::size_t> PathTablesTwin::path(std::size_t a, std::size_t b) const {
  std::vector<std::size_t> parent(forest_.num_vertices(), kNone);
  std::deque<std::size_t> queue{a};
  parent[a] = a;
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    for (auto y : forest_.neighbors(x)) {
      if (parent[y] != kNone) continue;
      parent[y] = x;
      queue.push_back(y);
    }
  }
  if (parent[b] == kNone) throw DomainError("path tables: vertices lie in different trees");
  std::vector<std::size_t> out{b};
  while (out.back() != a) out.push_back(parent[out.back()]);
  return out;
}

std::size_t PathTablesTwin::length(std::size_t v1, std::size_t v2) const { return path(v1, v2).size(); }

bool PathTablesTwin::disjoint(std::size_t v1, std::size_t v2, std::size_t u1, std::size_t u2) const {
  auto p = path(v1, v2);
  auto q = path(u1, u2);
  std::sort(p.begin(), p.end());
  std::sort(q.begin(), q.end());
  std::vector<std::size_t> common;
  std::set_intersection(p.begin(), p.end(), q.begin(), q.end(), std::back_inserter(common));
  return common.empty();
}

}  // namespace compact_ilp
