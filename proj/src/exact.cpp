#include "compact_ilp/exact.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <string>

#include "compact_ilp/errors.hpp"

namespace compact_ilp {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  std::size_t sets;
  explicit UnionFind(std::size_t n) : parent(n), sets(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    --sets;
    return true;
  }
};

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t r, std::uint64_t cap) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    c = c * (n - r + i) / i;
    if (c > cap) return cap + 1;
  }
  return c;
}

void check_count(std::uint64_t n, std::uint64_t r, const ExactGuards& g, const char* what) {
  if (binomial_capped(n, r, g.max_candidates) > g.max_candidates)
    throw BudgetError(std::string(what) + ": more than " + std::to_string(g.max_candidates) + " candidate subsets");
}

/// Calls f on every r-subset of 0..n-1 in lexicographic order until f returns true.
bool any_combination(std::size_t n, std::size_t r, const std::function<bool(const std::vector<std::size_t>&)>& f) {
  if (r > n) return false;
  std::vector<std::size_t> c(r);
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    if (f(c)) return true;
    std::size_t i = r;
    while (i > 0 && c[i - 1] == n - r + i - 1) --i;
    if (i == 0) return false;
    ++c[i - 1];
    for (std::size_t j = i; j < r; ++j) c[j] = c[j - 1] + 1;
  }
}

void guard_vertices(const Graph& g, const ExactGuards& guards) {
  if (g.num_vertices() > guards.max_vertices)
    throw BudgetError("graph has " + std::to_string(g.num_vertices()) + " vertices, guard is " +
                      std::to_string(guards.max_vertices));
}

bool decide_set_cover(const SetCoverInstance& inst, const ExactGuards& guards) {
  if (inst.sets.size() > guards.max_sets) throw BudgetError("set family exceeds the guard");
  if (inst.universe_size > guards.max_universe) throw BudgetError("universe exceeds the guard");
  const auto best = min_set_cover(inst);
  return best && *best <= inst.budget;
}

bool decide_r_way_cut(const RWayCutInstance& inst, const ExactGuards& guards) {
  const Graph& g = inst.graph;
  guard_vertices(g, guards);
  if (g.num_components() >= inst.r) return true;
  const std::size_t take = std::min(inst.k, g.num_edges());
  check_count(g.num_edges(), take, guards, "r-way cut");
  std::vector<bool> removed(g.num_edges());
  return any_combination(g.num_edges(), take, [&](const std::vector<std::size_t>& cut) {
    std::fill(removed.begin(), removed.end(), false);
    for (auto e : cut) removed[e] = true;
    UnionFind uf(g.num_vertices());
    for (std::size_t e = 0; e < g.num_edges(); ++e)
      if (!removed[e]) uf.unite(g.edges()[e].first, g.edges()[e].second);
    return uf.sets >= inst.r;
  });
}

bool decide_multiway_cut(const MultiwayCutInstance& inst, const ExactGuards& guards) {
  const Graph& g = inst.graph;
  guard_vertices(g, guards);
  std::vector<bool> terminal(g.num_vertices());
  for (auto t : inst.terminals) terminal[t] = true;
  std::vector<std::size_t> free;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (!terminal[v]) free.push_back(v);
  const std::size_t take = std::min(inst.k, free.size());
  check_count(free.size(), take, guards, "multiway cut");
  std::vector<bool> deleted(g.num_vertices());
  return any_combination(free.size(), take, [&](const std::vector<std::size_t>& pick) {
    std::fill(deleted.begin(), deleted.end(), false);
    for (auto i : pick) deleted[free[i]] = true;
    UnionFind uf(g.num_vertices());
    for (auto [u, v] : g.edges())
      if (!deleted[u] && !deleted[v]) uf.unite(u, v);
    for (std::size_t i = 0; i < inst.terminals.size(); ++i)
      for (std::size_t j = i + 1; j < inst.terminals.size(); ++j)
        if (uf.find(inst.terminals[i]) == uf.find(inst.terminals[j])) return false;
    return true;
  });
}

/// Can y be written as a concatenation of all blocks, each used once?
bool tiles(const std::string& y, std::size_t at, std::vector<std::string>& blocks, std::vector<bool>& used) {
  if (at == y.size()) return std::all_of(used.begin(), used.end(), [](bool u) { return u; });
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (used[i] || y.compare(at, blocks[i].size(), blocks[i]) != 0) continue;
    bool twin = false;
    for (std::size_t j = 0; j < i && !twin; ++j) twin = !used[j] && blocks[j] == blocks[i];
    if (twin) continue;
    used[i] = true;
    if (tiles(y, at + blocks[i].size(), blocks, used)) return true;
    used[i] = false;
  }
  return false;
}

bool decide_mcsp(const McspInstance& inst, const ExactGuards& guards) {
  const std::size_t n = inst.x.size();
  if (n > guards.max_string) throw BudgetError("string length exceeds the guard");
  if (n == 0) return true;
  // Every subset of the n-1 interior cut points gives a partition into nonempty blocks.
  for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) + 1 > inst.k) continue;
    std::vector<std::string> blocks;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      if (i == n || (mask >> (i - 1) & 1u)) {
        blocks.push_back(inst.x.substr(start, i - start));
        start = i;
      }
    }
    std::vector<bool> used(blocks.size());
    if (tiles(inst.y, 0, blocks, used)) return true;
  }
  return false;
}

bool path_dfs(const Graph& g, std::size_t v, std::size_t depth, std::size_t target, std::vector<bool>& on_path) {
  if (depth == target) return true;
  for (auto w : g.neighbors(v)) {
    if (on_path[w]) continue;
    on_path[w] = true;
    if (path_dfs(g, w, depth + 1, target, on_path)) return true;
    on_path[w] = false;
  }
  return false;
}

bool has_path_with(const Graph& g, std::size_t vertices) {
  if (vertices == 0) return true;
  if (vertices > g.num_vertices()) return false;
  std::vector<bool> on_path(g.num_vertices());
  for (std::size_t s = 0; s < g.num_vertices(); ++s) {
    on_path[s] = true;
    if (path_dfs(g, s, 1, vertices, on_path)) return true;
    on_path[s] = false;
  }
  return false;
}

bool decide_discretization(const DiscretizationInstance& inst, const ExactGuards& guards) {
  if (inst.w1.size() + inst.w2.size() > guards.max_points) throw BudgetError("point count exceeds the guard");
  if (inst.w1.empty() || inst.w2.empty()) return true;
  std::vector<Rational> xs, ys;
  for (const auto* set : {&inst.w1, &inst.w2})
    for (const auto& p : *set) {
      xs.push_back(p.x);
      ys.push_back(p.y);
    }
  const auto hx = midpoint_pool(xs);
  const auto hy = midpoint_pool(ys);
  // A line matters only through the set of W1-W2 pairs it splits.
  const std::size_t pairs = inst.w1.size() * inst.w2.size();
  if (pairs > 64) throw BudgetError("discretization: more than 64 W1-W2 pairs");
  auto split_mask = [&](const Rational& c, bool vertical) {
    std::uint64_t mask = 0;
    std::size_t bit = 0;
    for (const auto& p : inst.w1)
      for (const auto& q : inst.w2) {
        const Rational& a = vertical ? p.x : p.y;
        const Rational& b = vertical ? q.x : q.y;
        if ((a < c && c < b) || (b < c && c < a)) mask |= std::uint64_t{1} << bit;
        ++bit;
      }
    return mask;
  };
  std::vector<std::uint64_t> masks;
  for (const auto& c : hx) masks.push_back(split_mask(c, true));
  for (const auto& c : hy) masks.push_back(split_mask(c, false));
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  masks.erase(std::remove(masks.begin(), masks.end(), 0u), masks.end());
  const std::uint64_t full = pairs == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << pairs) - 1;
  const std::size_t take = std::min(inst.k, masks.size());
  check_count(masks.size(), take, guards, "discretization");
  return any_combination(masks.size(), take, [&](const std::vector<std::size_t>& pick) {
    std::uint64_t acc = 0;
    for (auto i : pick) acc |= masks[i];
    return acc == full;
  });
}

}  // namespace

BigInt min_weight_vertex_cover(const Graph& g, const std::vector<BigInt>& weights) {
  const std::size_t n = g.num_vertices();
  if (n > 24) throw BudgetError("vertex cover enumeration limited to 24 vertices");
  std::optional<BigInt> best;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool cover = true;
    for (auto [u, v] : g.edges())
      if (!(mask >> u & 1u) && !(mask >> v & 1u)) {
        cover = false;
        break;
      }
    if (!cover) continue;
    BigInt w = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (mask >> v & 1u) w += weights[v];
    if (!best || w < *best) best = w;
  }
  return *best;
}

std::optional<std::size_t> min_set_cover(const SetCoverInstance& inst) {
  if (inst.sets.size() > 24) throw BudgetError("set cover enumeration limited to 24 sets");
  std::optional<std::size_t> best;
  for (std::uint32_t mask = 0; mask < (1u << inst.sets.size()); ++mask) {
    std::vector<bool> hit(inst.universe_size);
    for (std::size_t s = 0; s < inst.sets.size(); ++s)
      if (mask >> s & 1u)
        for (auto e : inst.sets[s]) hit[e] = true;
    if (!std::all_of(hit.begin(), hit.end(), [](bool h) { return h; })) continue;
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (!best || size < *best) best = size;
  }
  return best;
}

std::size_t longest_path_vertices(const Graph& g) {
  std::size_t best = 0;
  while (best < g.num_vertices() && has_path_with(g, best + 1)) ++best;
  return best;
}

std::optional<std::size_t> min_steiner_edges(const Graph& g, const std::vector<std::size_t>& terminals) {
  const std::size_t n = g.num_vertices();
  std::vector<bool> terminal(n);
  for (auto t : terminals) terminal[t] = true;
  std::vector<std::size_t> free;
  for (std::size_t v = 0; v < n; ++v)
    if (!terminal[v]) free.push_back(v);
  if (free.size() > 24) throw BudgetError("steiner enumeration limited to 24 non-terminals");
  std::optional<std::size_t> best;
  std::vector<bool> chosen(n);
  for (std::uint32_t mask = 0; mask < (1u << free.size()); ++mask) {
    const auto extra = static_cast<std::size_t>(std::popcount(mask));
    if (best && terminals.size() + extra - 1 >= *best) continue;
    chosen = terminal;
    for (std::size_t i = 0; i < free.size(); ++i)
      if (mask >> i & 1u) chosen[free[i]] = true;
    UnionFind uf(n);
    for (auto [u, v] : g.edges())
      if (chosen[u] && chosen[v]) uf.unite(u, v);
    const std::size_t outside = n - terminals.size() - extra;
    if (uf.sets - outside == 1) best = terminals.size() + extra - 1;
  }
  return best;
}

bool separates(const std::vector<Point>& w1, const std::vector<Point>& w2, const std::vector<Rational>& xs,
               const std::vector<Rational>& ys) {
  auto strictly_between = [](const std::vector<Rational>& lines, const Rational& a, const Rational& b) {
    const Rational& lo = a < b ? a : b;
    const Rational& hi = a < b ? b : a;
    return std::any_of(lines.begin(), lines.end(), [&](const Rational& c) { return lo < c && c < hi; });
  };
  for (const auto& p : w1)
    for (const auto& q : w2)
      if (!strictly_between(xs, p.x, q.x) && !strictly_between(ys, p.y, q.y)) return false;
  return true;
}

bool decide_exact(const ProblemInstance& inst, const ExactGuards& guards) {
  validate_instance(inst);
  return std::visit(
      [&](const auto& i) -> bool {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, SetCoverInstance>) {
          return decide_set_cover(i, guards);
        } else if constexpr (std::is_same_v<T, WvcInstance>) {
          guard_vertices(i.graph, guards);
          return min_weight_vertex_cover(i.graph, i.weights) <= i.budget;
        } else if constexpr (std::is_same_v<T, RWayCutInstance>) {
          return decide_r_way_cut(i, guards);
        } else if constexpr (std::is_same_v<T, MultiwayCutInstance>) {
          return decide_multiway_cut(i, guards);
        } else if constexpr (std::is_same_v<T, McspInstance>) {
          return decide_mcsp(i, guards);
        } else if constexpr (std::is_same_v<T, LongPathInstance>) {
          guard_vertices(i.graph, guards);
          return has_path_with(i.graph, i.ell);
        } else if constexpr (std::is_same_v<T, SteinerInstance>) {
          guard_vertices(i.graph, guards);
          const auto best = min_steiner_edges(i.graph, i.terminals);
          return best && *best <= i.ell;
        } else {
          return decide_discretization(i, guards);
        }
      },
      inst);
}

}  // namespace compact_ilp
