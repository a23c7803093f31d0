#include "compact_ilp/generate.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "compact_ilp/errors.hpp"

namespace compact_ilp {

std::uint64_t SeededRng::below(std::uint64_t bound) {
  if (bound == 0) throw UsageError("SeededRng::below needs a positive bound");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do v = engine_();
  while (v >= limit);
  return v % bound;
}

std::string gen_mode_name(GenMode m) {
  switch (m) {
    case GenMode::Random:
      return "random";
    case GenMode::PlantedYes:
      return "planted";
    case GenMode::ForcedNo:
      return "no";
  }
  return "random";
}

GenMode parse_gen_mode(std::string_view name) {
  if (name == "random") return GenMode::Random;
  if (name == "planted") return GenMode::PlantedYes;
  if (name == "no") return GenMode::ForcedNo;
  throw UsageError("unknown generator mode '" + std::string(name) + "' (expected random, planted or no)");
}

nlohmann::ordered_json spec_to_json(const GenSpec& spec) {
  nlohmann::ordered_json j;
  j["variant"] = variant_name(spec.variant);
  j["mode"] = gen_mode_name(spec.mode);
  j["size"] = spec.size;
  j["param"] = spec.param;
  j["extra"] = spec.extra;
  j["density"] = spec.density;
  j["seed"] = spec.seed;
  return j;
}

GenSpec spec_from_json(const nlohmann::ordered_json& j) {
  try {
    if (!j.is_object()) throw ParseError("generator spec must be a JSON object");
    GenSpec s;
    s.variant = parse_variant(j.at("variant").get<std::string>());
    if (j.contains("mode")) s.mode = parse_gen_mode(j.at("mode").get<std::string>());
    s.size = j.at("size").get<std::size_t>();
    if (j.contains("param")) s.param = j.at("param").get<std::size_t>();
    if (j.contains("extra")) s.extra = j.at("extra").get<std::size_t>();
    if (j.contains("density")) s.density = j.at("density").get<std::uint32_t>();
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    if (s.density > 100) throw ParseError("density is a percentage (0..100)");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("generator spec: ") + e.what());
  } catch (const UsageError& e) {
    throw ParseError(std::string("generator spec: ") + e.what());
  }
}

Graph random_graph(SeededRng& rng, std::size_t n, std::uint32_t density) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng.percent(density)) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

namespace {

std::vector<std::size_t> permutation(SeededRng& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  rng.shuffle(p);
  return p;
}

std::vector<std::size_t> sample(SeededRng& rng, std::size_t n, std::size_t count) {
  auto p = permutation(rng, n);
  p.resize(std::min(count, n));
  std::sort(p.begin(), p.end());
  return p;
}

Edge ordered(std::size_t a, std::size_t b) { return a < b ? Edge{a, b} : Edge{b, a}; }

Graph graph_from_set(std::size_t n, const std::set<Edge>& edges) {
  return Graph::from_edges(n, std::vector<Edge>(edges.begin(), edges.end()));
}

SetCoverInstance gen_set_cover(const GenSpec& s, SeededRng& rng) {
  SetCoverInstance inst;
  inst.universe_size = s.size;
  inst.budget = s.param;
  auto random_set = [&](bool skip_last) {
    std::vector<std::size_t> set;
    for (std::size_t e = 0; e < s.size; ++e)
      if (rng.percent(s.density) && !(skip_last && e + 1 == s.size)) set.push_back(e);
    return set;
  };
  switch (s.mode) {
    case GenMode::Random:
      for (std::size_t i = 0; i < s.extra; ++i) inst.sets.push_back(random_set(false));
      break;
    case GenMode::PlantedYes: {
      const std::size_t blocks = s.size == 0 ? 0 : std::max<std::size_t>(1, std::min(s.param, s.size));
      inst.budget = std::max(inst.budget, blocks);
      std::vector<std::vector<std::size_t>> planted(blocks);
      for (std::size_t e = 0; e < s.size; ++e) planted[rng.below(blocks)].push_back(e);
      inst.sets = planted;
      while (inst.sets.size() < s.extra) inst.sets.push_back(random_set(false));
      rng.shuffle(inst.sets);
      break;
    }
    case GenMode::ForcedNo:
      inst.universe_size = std::max<std::size_t>(1, s.size);
      for (std::size_t i = 0; i < s.extra; ++i) inst.sets.push_back(random_set(true));
      break;
  }
  return inst;
}

WvcInstance gen_wvc(const GenSpec& s, SeededRng& rng) {
  WvcInstance inst;
  const std::size_t max_w = std::max<std::size_t>(1, s.extra);
  std::size_t n = s.size;
  if (s.mode == GenMode::ForcedNo) n = std::max<std::size_t>(2, n);
  for (std::size_t v = 0; v < n; ++v) inst.weights.push_back(BigInt(1 + rng.below(max_w)));
  inst.budget = s.param;
  switch (s.mode) {
    case GenMode::Random:
      inst.graph = random_graph(rng, n, s.density);
      break;
    case GenMode::PlantedYes: {
      std::vector<bool> cover(n);
      BigInt weight = 0;
      for (std::size_t v = 0; v < n; ++v)
        if ((cover[v] = rng.percent(50))) weight += inst.weights[v];
      std::set<Edge> edges;
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
          if ((cover[u] || cover[v]) && rng.percent(s.density)) edges.insert({u, v});
      inst.graph = graph_from_set(n, edges);
      inst.budget = weight;
      break;
    }
    case GenMode::ForcedNo: {
      std::set<Edge> edges;
      BigInt total = 0, heaviest = 0;
      for (std::size_t u = 0; u < n; ++u) {
        total += inst.weights[u];
        heaviest = std::max(heaviest, inst.weights[u]);
        for (std::size_t v = u + 1; v < n; ++v) edges.insert({u, v});
      }
      inst.graph = graph_from_set(n, edges);
      inst.budget = total - heaviest - 1;
      break;
    }
  }
  return inst;
}

RWayCutInstance gen_r_way_cut(const GenSpec& s, SeededRng& rng) {
  const std::size_t n = s.size;
  switch (s.mode) {
    case GenMode::Random:
      return {random_graph(rng, n, s.density), s.extra, s.param};
    case GenMode::PlantedYes: {
      const std::size_t r = std::clamp<std::size_t>(s.extra, 1, std::max<std::size_t>(1, n));
      const auto order = permutation(rng, n);
      std::vector<std::size_t> group(n);
      std::vector<std::vector<std::size_t>> members(r);
      for (std::size_t i = 0; i < n; ++i) {
        group[order[i]] = i < r ? i : rng.below(r);
        members[group[order[i]]].push_back(order[i]);
      }
      std::set<Edge> edges;
      for (const auto& m : members)
        for (std::size_t i = 1; i < m.size(); ++i) edges.insert(ordered(m[i], m[rng.below(i)]));
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
          if (group[u] == group[v] && rng.percent(s.density)) edges.insert({u, v});
      std::vector<Edge> cross;
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
          if (group[u] != group[v]) cross.emplace_back(u, v);
      rng.shuffle(cross);
      for (std::size_t i = 0; i < std::min(s.param, cross.size()); ++i) edges.insert(cross[i]);
      return {graph_from_set(n, edges), r, s.param};
    }
    case GenMode::ForcedNo: {
      const std::size_t m = std::max<std::size_t>(3, n);
      std::set<Edge> edges;
      for (std::size_t u = 0; u < m; ++u)
        for (std::size_t v = u + 1; v < m; ++v) edges.insert({u, v});
      return {graph_from_set(m, edges), 2, m - 2};
    }
  }
  return {};
}

MultiwayCutInstance gen_multiway_cut(const GenSpec& s, SeededRng& rng) {
  const std::size_t k = std::max<std::size_t>(1, s.param);
  switch (s.mode) {
    case GenMode::Random: {
      Graph g = random_graph(rng, s.size, s.density);
      auto t = sample(rng, s.size, std::min(s.extra, 2 * s.param));
      return {std::move(g), std::move(t), s.param};
    }
    case GenMode::PlantedYes: {
      const std::size_t n = std::max<std::size_t>(2, s.size);
      const std::size_t t_count = std::clamp<std::size_t>(s.extra, 2, std::min(2 * k, n));
      const auto order = permutation(rng, n);
      std::vector<std::size_t> terminals(order.begin(), order.begin() + t_count);
      std::sort(terminals.begin(), terminals.end());
      // group < t_count: side of that terminal; group == t_count: the cut X.
      std::vector<std::size_t> group(n);
      std::size_t cut_size = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (i < t_count) {
          group[order[i]] = i;
        } else if (cut_size < k && rng.percent(30)) {
          group[order[i]] = t_count;
          ++cut_size;
        } else {
          group[order[i]] = rng.below(t_count);
        }
      }
      std::set<Edge> edges;
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
          const bool allowed = group[u] == group[v] || group[u] == t_count || group[v] == t_count;
          if (allowed && rng.percent(s.density)) edges.insert({u, v});
        }
      return {graph_from_set(n, edges), std::move(terminals), k};
    }
    case GenMode::ForcedNo: {
      const std::size_t n = std::max<std::size_t>(2, s.size);
      Graph base = random_graph(rng, n, s.density);
      std::set<Edge> edges(base.edges().begin(), base.edges().end());
      const auto t = sample(rng, n, 2);
      edges.insert({t[0], t[1]});
      return {graph_from_set(n, edges), t, k};
    }
  }
  return {};
}

McspInstance gen_mcsp(const GenSpec& s, SeededRng& rng) {
  const std::size_t sigma = std::clamp<std::size_t>(s.extra, 1, 26);
  const std::size_t k = std::max<std::size_t>(1, s.param);
  std::size_t n = s.size;
  if (s.mode == GenMode::ForcedNo) n = std::max<std::size_t>(1, n);
  std::string x;
  for (std::size_t i = 0; i < n; ++i) x.push_back(static_cast<char>('a' + rng.below(sigma)));
  std::string y;
  if (s.mode == GenMode::Random) {
    std::vector<char> chars(x.begin(), x.end());
    rng.shuffle(chars);
    y.assign(chars.begin(), chars.end());
  } else if (s.mode == GenMode::PlantedYes) {
    const std::size_t blocks = n == 0 ? 0 : std::min(k, n);
    std::vector<std::size_t> cuts = n == 0 ? std::vector<std::size_t>{} : sample(rng, n - 1, blocks - 1);
    for (auto& c : cuts) c += 1;
    cuts.push_back(n);
    std::vector<std::string> pieces;
    std::size_t start = 0;
    for (auto c : cuts) {
      pieces.push_back(x.substr(start, c - start));
      start = c;
    }
    rng.shuffle(pieces);
    for (const auto& p : pieces) y += p;
  } else {
    y = x;
    const std::size_t at = rng.below(n);
    y[at] = static_cast<char>(y[at] == 'a' ? 'b' : 'a');
  }
  return {x, y, k};
}

LongPathInstance gen_long_path(const GenSpec& s, SeededRng& rng) {
  const std::size_t n = s.size;
  switch (s.mode) {
    case GenMode::Random:
      return {random_graph(rng, n, s.density), s.param};
    case GenMode::PlantedYes: {
      const std::size_t ell = std::min(s.param, n);
      const auto order = permutation(rng, n);
      Graph base = random_graph(rng, n, s.density);
      std::set<Edge> edges(base.edges().begin(), base.edges().end());
      for (std::size_t i = 1; i < ell; ++i) edges.insert(ordered(order[i - 1], order[i]));
      return {graph_from_set(n, edges), ell};
    }
    case GenMode::ForcedNo: {
      if (n < 4) return {random_graph(rng, n, s.density), n + 1};
      const std::size_t center = rng.below(n);
      std::set<Edge> edges;
      for (std::size_t v = 0; v < n; ++v)
        if (v != center) edges.insert(ordered(center, v));
      return {graph_from_set(n, edges), std::clamp<std::size_t>(s.param, 4, n)};
    }
  }
  return {};
}

SteinerInstance gen_steiner(const GenSpec& s, SeededRng& rng) {
  const std::size_t n = std::max<std::size_t>(s.mode == GenMode::ForcedNo ? 2 : 1, s.size);
  const std::size_t t_count = std::clamp<std::size_t>(s.extra, 1, n);
  switch (s.mode) {
    case GenMode::Random:
      return {random_graph(rng, n, s.density), sample(rng, n, t_count), s.param};
    case GenMode::PlantedYes: {
      const std::size_t tree_size = std::clamp<std::size_t>(s.param + 1, t_count, n);
      const auto order = permutation(rng, n);
      Graph base = random_graph(rng, n, s.density);
      std::set<Edge> edges(base.edges().begin(), base.edges().end());
      for (std::size_t i = 1; i < tree_size; ++i) edges.insert(ordered(order[i], order[rng.below(i)]));
      std::vector<std::size_t> picks = sample(rng, tree_size, t_count);
      std::vector<std::size_t> terminals;
      for (auto p : picks) terminals.push_back(order[p]);
      std::sort(terminals.begin(), terminals.end());
      return {graph_from_set(n, edges), std::move(terminals), tree_size - 1};
    }
    case GenMode::ForcedNo: {
      const auto order = permutation(rng, n);
      std::set<Edge> edges;
      for (std::size_t i = 1; i < n; ++i) edges.insert(ordered(order[i - 1], order[i]));
      std::vector<std::size_t> terminals{order.front(), order.back()};
      std::sort(terminals.begin(), terminals.end());
      return {graph_from_set(n, edges), std::move(terminals), n - 2};
    }
  }
  return {};
}

DiscretizationInstance gen_discretization(const GenSpec& s, SeededRng& rng) {
  DiscretizationInstance inst;
  inst.k = s.param;
  if (s.mode == GenMode::ForcedNo) {
    const std::size_t count = std::max<std::size_t>(2, s.size);
    const auto shift = static_cast<std::int64_t>(rng.below(5));
    for (std::size_t i = 0; i < count; ++i) {
      Point p{Rational(static_cast<std::int64_t>(i) + shift), Rational(static_cast<std::int64_t>(i))};
      (i % 2 == 0 ? inst.w1 : inst.w2).push_back(p);
    }
    inst.k = count - 2;
    return inst;
  }
  const std::size_t side = std::max<std::size_t>(2, s.extra);
  const auto cells = sample(rng, side * side, s.size);
  std::vector<Rational> xs, ys;
  if (s.mode == GenMode::PlantedYes) {
    const std::size_t lines = std::min(s.param, 2 * (side - 1));
    std::vector<std::size_t> pick = sample(rng, 2 * (side - 1), lines);
    for (auto p : pick) {
      const auto pos = static_cast<std::int64_t>(p % (side - 1));
      (p < side - 1 ? xs : ys).push_back(Rational(2 * pos + 1, 2));
    }
  }
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, bool>> cell_color;
  auto region = [&](const Rational& v, const std::vector<Rational>& cuts) {
    return static_cast<std::size_t>(std::count_if(cuts.begin(), cuts.end(), [&](const Rational& c) { return c < v; }));
  };
  for (auto c : cells) {
    Point p{Rational(static_cast<std::int64_t>(c % side)), Rational(static_cast<std::int64_t>(c / side))};
    bool first;
    if (s.mode == GenMode::PlantedYes) {
      const std::pair<std::size_t, std::size_t> key{region(p.x, xs), region(p.y, ys)};
      auto it = std::find_if(cell_color.begin(), cell_color.end(), [&](const auto& e) { return e.first == key; });
      if (it == cell_color.end()) {
        cell_color.push_back({key, rng.percent(50)});
        it = std::prev(cell_color.end());
      }
      first = it->second;
    } else {
      first = rng.percent(50);
    }
    (first ? inst.w1 : inst.w2).push_back(std::move(p));
  }
  return inst;
}

}  // namespace

ProblemInstance generate(const GenSpec& spec) {
  SeededRng rng(spec.seed);
  ProblemInstance out;
  switch (spec.variant) {
    case Variant::SetCover:
      out = gen_set_cover(spec, rng);
      break;
    case Variant::Wvc:
      out = gen_wvc(spec, rng);
      break;
    case Variant::RWayCut:
      out = gen_r_way_cut(spec, rng);
      break;
    case Variant::MultiwayCut:
      out = gen_multiway_cut(spec, rng);
      break;
    case Variant::Mcsp:
      out = gen_mcsp(spec, rng);
      break;
    case Variant::LongPath:
      out = gen_long_path(spec, rng);
      break;
    case Variant::Steiner:
      out = gen_steiner(spec, rng);
      break;
    case Variant::Discretization:
      out = gen_discretization(spec, rng);
      break;
  }
  validate_instance(out);
  return out;
}

}  // namespace compact_ilp
