#include <algorithm>
#include <numeric>

#include "compact_ilp/blob.hpp"
#include "compact_ilp/path_tables.hpp"
#include "protocol_internal.hpp"

namespace compact_ilp {

namespace {

struct Dsu {
  std::vector<std::size_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

bool acyclic_without(const Graph& g, const std::vector<bool>& removed) {
  Dsu dsu(g.num_vertices());
  for (auto [u, v] : g.edges())
    if (!removed[u] && !removed[v] && !dsu.unite(u, v)) return false;
  return true;
}

/// Vertices of a cycle in which every vertex but at most one has degree 2
/// in the alive subgraph; empty if there is none. Assumes minimum degree 2.
std::vector<std::size_t> semidisjoint_cycle(const Graph& g, const std::vector<bool>& alive,
                                            const std::vector<std::size_t>& deg) {
  const std::size_t n = g.num_vertices();
  std::vector<bool> seen(n, false);
  auto next_alive = [&](std::size_t v, std::size_t from) {
    for (auto w : g.neighbors(v))
      if (alive[w] && w != from) return w;
    return n;
  };
  for (std::size_t s = 0; s < n; ++s) {
    if (!alive[s] || deg[s] != 2 || seen[s]) continue;
    std::vector<std::size_t> chain{s};
    seen[s] = true;
    std::size_t ends[2];
    bool closed = false;
    std::size_t first_step[2];
    {
      std::size_t k = 0;
      for (auto w : g.neighbors(s))
        if (alive[w]) first_step[k++] = w;
    }
    for (int dir = 0; dir < 2 && !closed; ++dir) {
      std::size_t prev = s, cur = first_step[dir];
      while (cur != s && deg[cur] == 2 && !seen[cur]) {
        seen[cur] = true;
        chain.push_back(cur);
        const std::size_t nxt = next_alive(cur, prev);
        prev = cur;
        cur = nxt;
      }
      if (cur == s) closed = true;
      ends[dir] = cur;
    }
    if (closed) return chain;
    if (ends[0] == ends[1]) {
      chain.push_back(ends[0]);
      return chain;
    }
  }
  return {};
}

}  // namespace

bool is_feedback_vertex_set(const Graph& g, const std::vector<std::size_t>& x) {
  std::vector<bool> removed(g.num_vertices(), false);
  for (auto v : x) removed.at(v) = true;
  return acyclic_without(g, removed);
}

std::vector<std::size_t> fvs_2approx(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<Rational> weight(n, Rational(1));
  std::vector<bool> alive(n, true);
  std::vector<std::size_t> deg(n);
  for (std::size_t v = 0; v < n; ++v) deg[v] = g.degree(v);
  std::vector<std::size_t> picked;  // in order of selection

  auto remove = [&](std::size_t v) {
    alive[v] = false;
    for (auto w : g.neighbors(v))
      if (alive[w]) --deg[w];
  };
  auto cleanup = [&] {
    std::vector<std::size_t> stack;
    for (std::size_t v = 0; v < n; ++v)
      if (alive[v] && deg[v] <= 1) stack.push_back(v);
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      if (!alive[v]) continue;
      remove(v);
      for (auto w : g.neighbors(v))
        if (alive[w] && deg[w] <= 1) stack.push_back(w);
    }
  };

  while (true) {
    cleanup();
    std::vector<std::size_t> live;
    for (std::size_t v = 0; v < n; ++v)
      if (alive[v]) live.push_back(v);
    if (live.empty()) break;
    const auto cycle = semidisjoint_cycle(g, alive, deg);
    if (!cycle.empty()) {
      Rational gamma = weight[cycle.front()];
      for (auto v : cycle) gamma = std::min(gamma, weight[v]);
      for (auto v : cycle) weight[v] -= gamma;
    } else {
      Rational gamma = weight[live.front()] / (deg[live.front()] - 1);
      for (auto v : live) gamma = std::min(gamma, Rational(weight[v] / (deg[v] - 1)));
      for (auto v : live) weight[v] -= gamma * (deg[v] - 1);
    }
    for (auto v : live)
      if (weight[v] == 0) {
        picked.push_back(v);
        remove(v);
      }
  }

  std::vector<bool> in_x(n, false);
  for (auto v : picked) in_x[v] = true;
  for (auto it = picked.rbegin(); it != picked.rend(); ++it) {
    in_x[*it] = false;
    if (!acyclic_without(g, in_x)) in_x[*it] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < n; ++v)
    if (in_x[v]) out.push_back(v);
  return out;
}

LongPathWitness longpath_items(const std::vector<std::size_t>& path, const std::vector<std::size_t>& x) {
  LongPathWitness w;
  std::size_t i = 0;
  while (i < path.size()) {
    if (std::binary_search(x.begin(), x.end(), path[i])) {
      w.items.push_back({true, path[i], 0});
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < path.size() && !std::binary_search(x.begin(), x.end(), path[j + 1])) ++j;
    w.items.push_back({false, path[i], path[j]});
    i = j + 1;
  }
  return w;
}

std::size_t LongPathLayout::length() const {
  return field_width(slots() + 1) + slots() * (1 + 2 * field_width(n));
}

BitString encode(const LongPathLayout& L, const LongPathWitness& w) {
  if (w.items.size() > L.slots()) throw UsageError("long path witness has more than 2|X|+1 items");
  BitWriter out;
  out.put(w.items.size(), field_width(L.slots() + 1));
  for (std::size_t i = 0; i < L.slots(); ++i) {
    const LongPathItem item = i < w.items.size() ? w.items[i] : LongPathItem{};
    out.flag(item.fvs);
    out.put(item.a, field_width(L.n));
    out.put(item.b, field_width(L.n));
  }
  return out.finish();
}

Decoded<LongPathWitness> decode(const LongPathLayout& L, const BitString& bits) {
  detail::require_length(bits, L.length());
  BitReader in(bits);
  std::uint64_t steps = 1;
  const std::size_t count = in.get(field_width(L.slots() + 1));
  if (count > L.slots()) return detail::decode_fail<LongPathWitness>("item-count-exceeds-slots", steps);
  LongPathWitness w;
  for (std::size_t i = 0; i < L.slots(); ++i) {
    LongPathItem item;
    item.fvs = in.flag();
    item.a = in.get(field_width(L.n));
    item.b = in.get(field_width(L.n));
    steps += 3;
    if (i >= count) {
      if (item.fvs || item.a != 0 || item.b != 0)
        return detail::decode_fail<LongPathWitness>("unused-item-slot-nonzero", steps);
      continue;
    }
    if (item.a >= L.n || item.b >= L.n) return detail::decode_fail<LongPathWitness>("vertex-out-of-range", steps);
    if (item.fvs && item.b != 0) return detail::decode_fail<LongPathWitness>("fvs-item-second-id-nonzero", steps);
    w.items.push_back(item);
  }
  Decoded<LongPathWitness> d;
  d.value = std::move(w);
  d.steps = steps;
  return d;
}

namespace {

constexpr const char* kTag = "longpath-advice";

Graph forest_without(const Graph& g, const std::vector<std::size_t>& x) {
  std::vector<bool> removed(g.num_vertices(), false);
  for (auto v : x) removed[v] = true;
  std::vector<Edge> kept;
  for (auto [u, v] : g.edges())
    if (!removed[u] && !removed[v]) kept.emplace_back(u, v);
  return Graph::from_edges(g.num_vertices(), kept);
}

class LongPathVerifier final : public Verifier {
 public:
  explicit LongPathVerifier(std::string_view advice) {
    BlobReader in(advice, kTag, 1);
    ell_ = in.u64();
    layout_.n = in.u64();
    const auto x = in.u64_list();
    layout_.x = x.size();
    tables_ = TreePathTables::deserialize(in.section("tables"));
    adjacency_ = in.u64_list();
    in.expect_end();
    in_x_.assign(layout_.n, false);
    for (auto v : x) {
      if (v >= layout_.n) throw ParseError("long path advice: FVS vertex out of range");
      in_x_[v] = true;
    }
    if (tables_.num_vertices() != layout_.n || adjacency_.size() != (layout_.n * layout_.n + 63) / 64)
      throw ParseError("long path advice: inconsistent sizes");
  }

  std::size_t witness_length() const override { return layout_.length(); }

  VerifierReport verify(const BitString& bits) const override {
    detail::require_length(bits, witness_length());
    auto decoded = decode(layout_, bits);
    std::uint64_t steps = decoded.steps;
    PathTableCounters tc;
    std::uint64_t matrix_reads = 0;
    auto finish = [&](bool accept, std::string reason) {
      VerifierReport r = detail::report(accept, std::move(reason), steps + tc.lookups() + matrix_reads, bits.size());
      r.calls["path-tables"] = tc.lookups();
      r.calls["adjacency-matrix"] = matrix_reads;
      return r;
    };
    if (!decoded.value) return finish(false, decoded.reason);
    const auto& items = decoded.value->items;

    std::vector<std::size_t> labels(items.size());
    std::size_t total = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
      const auto& it = items[i];
      ++steps;
      if (it.fvs) {
        if (!in_x_[it.a]) return finish(false, "fvs-item-not-in-x");
        total += 1;
        continue;
      }
      if (in_x_[it.a] || in_x_[it.b]) return finish(false, "subpath-endpoint-in-x");
      labels[i] = tables_.label(it.a, tc);
      if (tables_.label(it.b, tc) != labels[i]) return finish(false, "subpath-spans-trees");
      total += tables_.length(it.a, it.b, tc);
    }
    ++steps;
    if (total != ell_) return finish(false, "length-mismatch");
    for (std::size_t i = 0; i + 1 < items.size(); ++i) {
      const std::size_t end = items[i].fvs ? items[i].a : items[i].b;
      const std::size_t start = items[i + 1].a;
      ++matrix_reads;
      const std::size_t bit = end * layout_.n + start;
      if (!((adjacency_[bit / 64] >> (bit % 64)) & 1u)) return finish(false, "items-not-adjacent");
    }
    for (std::size_t i = 0; i < items.size(); ++i)
      for (std::size_t j = i + 1; j < items.size(); ++j) {
        const auto &a = items[i], &b = items[j];
        ++steps;
        if (a.fvs != b.fvs) continue;
        if (a.fvs) {
          if (a.a == b.a) return finish(false, "repeated-fvs-vertex");
          continue;
        }
        if (labels[i] != labels[j]) continue;
        if (!tables_.disjoint(a.a, a.b, b.a, b.b, tc)) return finish(false, "subpaths-intersect");
      }
    return finish(true, "");
  }

 private:
  std::size_t ell_ = 0;
  LongPathLayout layout_;
  std::vector<bool> in_x_;
  TreePathTables tables_;
  std::vector<std::uint64_t> adjacency_;
};

const LongPathInstance& as_long_path(const ProblemInstance& inst) {
  return detail::expect_instance<LongPathInstance>(inst, "long path");
}

class LongPathProtocol final : public Protocol {
 public:
  Variant variant() const override { return Variant::LongPath; }

  Preprocessed preprocess(const ProblemInstance& inst) const override {
    const auto& in = as_long_path(inst);
    const Graph& g = in.graph;
    const std::size_t n = g.num_vertices();
    const auto x = fvs_2approx(g);
    BlobWriter out(kTag, 1);
    out.u64(in.ell);
    out.u64(n);
    out.u64_list(std::vector<std::uint64_t>(x.begin(), x.end()));
    out.section("tables", TreePathTables::build(forest_without(g, x)).serialize());
    std::vector<std::uint64_t> matrix((n * n + 63) / 64, 0);
    for (auto [u, v] : g.edges()) {
      for (const std::size_t bit : {u * n + v, v * n + u}) matrix[bit / 64] |= std::uint64_t{1} << (bit % 64);
    }
    out.u64_list(matrix);
    return {out.take(), LongPathLayout{n, x.size()}.length()};
  }

  std::unique_ptr<Verifier> load(std::string_view advice) const override {
    return std::make_unique<LongPathVerifier>(advice);
  }

  std::size_t length_formula(const ProblemInstance& inst) const override {
    const auto& in = as_long_path(inst);
    const std::size_t x = fvs_2approx(in.graph).size();
    return ceil_log2(2 * x + 2) + (2 * x + 1) * (1 + 2 * ceil_log2(in.graph.num_vertices()));
  }

  std::uint64_t call_budget(const ProblemInstance& inst) const override {
    const std::uint64_t s = 2 * fvs_2approx(as_long_path(inst).graph).size() + 1;
    return 3 * s + (s - 1) + detail::choose2(s);
  }

  std::size_t parameter(const ProblemInstance& inst) const override {
    return fvs_2approx(as_long_path(inst).graph).size();
  }

  std::string length_formula_text() const override {
    return "ceil(log2(2x+2)) + (2x+1)*(1 + 2*ceil(log2 n)), x = |X|";
  }
  std::string call_budget_text() const override { return "3s + (s-1) + C(s,2), s = 2|X|+1"; }
};

}  // namespace

std::unique_ptr<Protocol> longpath_protocol() { return std::make_unique<LongPathProtocol>(); }

}  // namespace compact_ilp
