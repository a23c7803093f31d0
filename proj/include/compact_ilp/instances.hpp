#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "compact_ilp/bad_tuples.hpp"
#include "compact_ilp/graph.hpp"
#include "compact_ilp/modelers.hpp"

namespace compact_ilp {

struct RWayCutInstance {
  Graph graph;
  std::size_t r = 0;
  std::size_t k = 0;
  friend bool operator==(const RWayCutInstance&, const RWayCutInstance&) = default;
};

struct MultiwayCutInstance {
  Graph graph;
  std::vector<std::size_t> terminals;  // sorted, distinct
  std::size_t k = 0;
  friend bool operator==(const MultiwayCutInstance&, const MultiwayCutInstance&) = default;
};

struct McspInstance {
  std::string x;
  std::string y;
  std::size_t k = 1;
  friend bool operator==(const McspInstance&, const McspInstance&) = default;
};

/// Is there a path on exactly `ell` vertices?
struct LongPathInstance {
  Graph graph;
  std::size_t ell = 0;
  friend bool operator==(const LongPathInstance&, const LongPathInstance&) = default;
};

/// Is there a tree in G spanning the terminals with at most `ell` edges?
struct SteinerInstance {
  Graph graph;
  std::vector<std::size_t> terminals;  // sorted, distinct, non-empty
  std::size_t ell = 0;
  friend bool operator==(const SteinerInstance&, const SteinerInstance&) = default;
};

struct DiscretizationInstance {
  std::vector<Point> w1;
  std::vector<Point> w2;
  std::size_t k = 0;
  friend bool operator==(const DiscretizationInstance&, const DiscretizationInstance&) = default;
};

using ProblemInstance = std::variant<SetCoverInstance, WvcInstance, RWayCutInstance, MultiwayCutInstance, McspInstance,
                                     LongPathInstance, SteinerInstance, DiscretizationInstance>;

enum class Variant { SetCover, Wvc, RWayCut, MultiwayCut, Mcsp, LongPath, Steiner, Discretization };

/// Names used in instance headers and on the command line:
/// set-cover, wvc, r-way-cut, multiway-cut, mcsp, long-path, steiner, discretization.
std::string variant_name(Variant v);
Variant parse_variant(std::string_view name);
Variant variant_of(const ProblemInstance& inst);

/// Per-variant validity (terminals inside V, |x| = |y|, disjoint point sets,
/// ...). Throws InvariantError.
void validate_instance(const ProblemInstance& inst);

/// Line-based text format. The first non-comment line is `problem <name>`;
/// `#` starts a comment. When `expected` is given the header must match it.
ProblemInstance parse_instance(std::string_view text);
ProblemInstance parse_instance(std::string_view text, Variant expected);

/// Canonical text: parse_instance(write_instance(i)) == i, and writing the
/// parsed canonical text reproduces it byte for byte.
std::string write_instance(const ProblemInstance& inst);

/// Number of vertices, string length or point count, whichever applies.
std::size_t instance_size(const ProblemInstance& inst);

}  // namespace compact_ilp
