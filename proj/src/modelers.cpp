#include "compact_ilp/modelers.hpp"

#include <algorithm>
#include <string>

#include "compact_ilp/errors.hpp"

namespace compact_ilp {

void SetCoverInstance::validate() const {
  for (std::size_t s = 0; s < sets.size(); ++s) {
    for (std::size_t i = 0; i < sets[s].size(); ++i) {
      if (sets[s][i] >= universe_size)
        throw InvariantError("set " + std::to_string(s) + " contains element " + std::to_string(sets[s][i]) +
                             " outside the universe");
      if (i > 0 && sets[s][i] <= sets[s][i - 1])
        throw InvariantError("set " + std::to_string(s) + " is not strictly increasing");
    }
  }
}

IntegerProgram set_cover_to_ilp(const SetCoverInstance& inst, bool binary) {
  inst.validate();
  const std::size_t u = inst.universe_size;
  IntegerProgram p = IntegerProgram::standard(u + 1, inst.sets.size(), Sense::LessEq);
  for (std::size_t s = 0; s < inst.sets.size(); ++s) {
    for (auto e : inst.sets[s]) p.entries.push_back({e, s, BigInt(-1)});
    p.entries.push_back({u, s, BigInt(1)});
    if (binary) p.upper[s] = BigInt(1);
  }
  for (std::size_t e = 0; e < u; ++e) p.rhs[e] = -1;
  p.rhs[u] = inst.budget;
  p.canonicalize();
  return p;
}

void WvcInstance::validate() const {
  if (weights.size() != graph.num_vertices())
    throw InvariantError("expected " + std::to_string(graph.num_vertices()) + " weights, got " +
                         std::to_string(weights.size()));
  for (std::size_t v = 0; v < weights.size(); ++v) {
    if (weights[v] < 0) throw InvariantError("vertex " + std::to_string(v) + " has a negative weight");
    if (weights[v] > weight_cap)
      throw InvariantError("vertex " + std::to_string(v) + " weight exceeds the unary cap " + weight_cap.str());
  }
}

VcWitnessSet make_witness_set(const Graph& g, std::vector<std::size_t> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  VcWitnessSet out;
  out.is_cover = true;
  for (auto [a, b] : g.edges()) {
    if (!std::binary_search(vertices.begin(), vertices.end(), a) &&
        !std::binary_search(vertices.begin(), vertices.end(), b)) {
      out.is_cover = false;
      break;
    }
  }
  out.vertices = std::move(vertices);
  return out;
}

VcWitnessSet vc_2approx(const Graph& g) {
  std::vector<bool> taken(g.num_vertices(), false);
  std::vector<std::size_t> chosen;
  for (auto [a, b] : g.edges()) {
    if (taken[a] || taken[b]) continue;
    taken[a] = taken[b] = true;
    chosen.push_back(a);
    chosen.push_back(b);
  }
  return make_witness_set(g, std::move(chosen));
}

namespace {

IntegerProgram wvc_rows(const WvcInstance& inst, const VcWitnessSet& cover, bool all_integral) {
  inst.validate();
  const Graph& g = inst.graph;
  std::vector<bool> in_cover(g.num_vertices(), false);
  for (auto v : cover.vertices) {
    if (v >= g.num_vertices()) throw InvariantError("cover names unknown vertex " + std::to_string(v));
    in_cover[v] = true;
  }
  for (auto [a, b] : g.edges()) {
    if (!in_cover[a] && !in_cover[b])
      throw InvariantError("vertex set is not a cover: edge (" + std::to_string(a) + "," + std::to_string(b) +
                           ") is uncovered");
  }
  const std::size_t y = cover.vertices.size();
  IntegerProgram p = IntegerProgram::standard(y + 1, g.num_vertices(), Sense::LessEq);
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    p.upper[v] = BigInt(1);
    p.integral[v] = all_integral || in_cover[v];
  }
  for (std::size_t r = 0; r < y; ++r) {
    const std::size_t u = cover.vertices[r];
    const BigInt deg(g.degree(u));
    for (auto v : g.neighbors(u)) p.entries.push_back({r, v, BigInt(-1)});
    p.entries.push_back({r, u, BigInt(-deg)});
    p.rhs[r] = -deg;
  }
  for (std::size_t v = 0; v < g.num_vertices(); ++v) p.entries.push_back({y, v, inst.weights[v]});
  p.rhs[y] = inst.budget;
  p.canonicalize();
  return p;
}

}  // namespace

IntegerProgram wvc_to_milp(const WvcInstance& inst, const VcWitnessSet& cover) {
  return wvc_rows(inst, cover, false);
}

IntegerProgram wvc_to_binary_ilp(const WvcInstance& inst, const VcWitnessSet& cover) {
  return wvc_rows(inst, cover, true);
}

WvcEntryAudit wvc_entry_audit(const WvcInstance& inst, const IntegerProgram& program) {
  WvcEntryAudit audit;
  audit.delta = compute_delta(program).delta_a;
  audit.n = inst.graph.num_vertices();
  for (const auto& w : inst.weights) audit.max_weight = std::max(audit.max_weight, w);
  audit.within_bound = audit.delta <= std::max(audit.max_weight, BigInt(audit.n));
  return audit;
}

std::vector<std::size_t> extract_cover(const std::vector<Rational>& certificate) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < certificate.size(); ++v)
    if (certificate[v] == 1) out.push_back(v);
  return out;
}

}  // namespace compact_ilp
