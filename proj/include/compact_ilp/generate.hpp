#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "compact_ilp/instances.hpp"
#include "json.hpp"

namespace compact_ilp {

/// mt19937_64 with a portable bounded draw (rejection sampling), so a seed
/// yields the same stream on every standard library.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// True with probability percent / 100.
  bool percent(std::uint32_t percent) { return below(100) < percent; }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

enum class GenMode { Random, PlantedYes, ForcedNo };

/// Field meaning per variant:
///   set-cover       size = |U|, param = l, extra = |F|
///   wvc             size = n, param = l, extra = max weight
///   r-way-cut       size = n, param = k, extra = r
///   multiway-cut    size = n, param = k, extra = |T|
///   mcsp            size = |x|, param = k, extra = alphabet size
///   long-path       size = n, param = l
///   steiner         size = n, param = l, extra = |T|
///   discretization  size = |W1| + |W2|, param = k, extra = grid side
/// Planted-yes instances are yes-instances by construction and forced-no
/// instances are no-instances by construction; both may adjust the
/// parameter so that the construction exists.
struct GenSpec {
  Variant variant = Variant::SetCover;
  GenMode mode = GenMode::Random;
  std::size_t size = 0;
  std::size_t param = 0;
  std::size_t extra = 0;
  std::uint32_t density = 50;  // edge / membership probability in percent
  std::uint64_t seed = 0;

  friend bool operator==(const GenSpec&, const GenSpec&) = default;
};

std::string gen_mode_name(GenMode m);
GenMode parse_gen_mode(std::string_view name);

nlohmann::ordered_json spec_to_json(const GenSpec& spec);
/// Missing optional fields take their defaults; throws ParseError otherwise.
GenSpec spec_from_json(const nlohmann::ordered_json& j);

/// Deterministic: equal specs give equal instances.
ProblemInstance generate(const GenSpec& spec);

/// Random simple graph, each pair present with the given percent probability.
Graph random_graph(SeededRng& rng, std::size_t n, std::uint32_t density);

}  // namespace compact_ilp
