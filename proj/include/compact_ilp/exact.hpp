#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "compact_ilp/instances.hpp"

namespace compact_ilp {

/// Size limits for the exhaustive deciders. Exceeding one raises BudgetError.
struct ExactGuards {
  std::size_t max_vertices = 10;
  std::size_t max_string = 8;
  std::size_t max_points = 10;
  std::size_t max_sets = 8;
  std::size_t max_universe = 64;
  /// Upper limit on candidate subsets examined by one call.
  std::uint64_t max_candidates = 20'000'000;
};

/// Exhaustive yes/no decision for any of the eight problems.
bool decide_exact(const ProblemInstance& inst, const ExactGuards& guards = {});

/// Minimum weight of a vertex cover, by subset enumeration.
BigInt min_weight_vertex_cover(const Graph& g, const std::vector<BigInt>& weights);

/// Smallest number of sets covering the universe; nullopt if none does.
std::optional<std::size_t> min_set_cover(const SetCoverInstance& inst);

/// Largest number of vertices on a simple path (0 for the empty graph).
std::size_t longest_path_vertices(const Graph& g);

/// Fewest edges in a connected subgraph spanning the terminals; nullopt if
/// the terminals are not connected.
std::optional<std::size_t> min_steiner_edges(const Graph& g, const std::vector<std::size_t>& terminals);

/// Does the line set (xs, ys) split every W1-W2 pair strictly?
bool separates(const std::vector<Point>& w1, const std::vector<Point>& w2, const std::vector<Rational>& xs,
               const std::vector<Rational>& ys);

}  // namespace compact_ilp
