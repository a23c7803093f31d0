#include <gtest/gtest.h>

#include "compact_ilp/errors.hpp"
#include "compact_ilp/exact.hpp"
#include "compact_ilp/modelers.hpp"
#include "compact_ilp/solve.hpp"
#include "test_support.hpp"

namespace compact_ilp {
namespace {

bool has_cover_of_size(const SetCoverInstance& inst) {
  const std::size_t f = inst.sets.size();
  for (std::uint32_t mask = 0; mask < (1u << f); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) > inst.budget) continue;
    std::vector<bool> hit(inst.universe_size, false);
    for (std::size_t i = 0; i < f; ++i)
      if (mask >> i & 1)
        for (auto e : inst.sets[i]) hit[e] = true;
    if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) return true;
  }
  return false;
}

BigInt brute_min_wvc(const Graph& g, const std::vector<BigInt>& w) {
  BigInt best = -1;
  for (std::uint32_t mask = 0; mask < (1u << g.num_vertices()); ++mask) {
    bool ok = true;
    for (const auto& [u, v] : g.edges()) ok = ok && ((mask >> u & 1) || (mask >> v & 1));
    if (!ok) continue;
    BigInt total = 0;
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      if (mask >> v & 1) total += w[v];
    if (best < 0 || total < best) best = total;
  }
  return best;
}

TEST(SetCoverModel, PickTheBigSet) {
  SetCoverInstance inst{2, {{0}, {1}, {0, 1}}, 1};
  const auto p = set_cover_to_ilp(inst, false);
  EXPECT_EQ(p.num_constraints, 3u);
  const auto r = brute_force_feasibility(p, BigInt(1));
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(r.integer_certificate(), (std::vector<BigInt>{0, 0, 1}));
}

TEST(SetCoverModel, ZeroBudgetInfeasible) {
  SetCoverInstance inst{2, {{0}, {1}, {0, 1}}, 0};
  EXPECT_FALSE(brute_force_feasibility(set_cover_to_ilp(inst, false), BigInt(1)).feasible());
  EXPECT_FALSE(brute_force_feasibility(set_cover_to_ilp(inst, true), BigInt(1)).feasible());
}

TEST(SetCoverModel, ShapeOnGeneratedInstances) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    GenSpec spec{Variant::SetCover, static_cast<GenMode>(seed % 3), 1 + seed % 6, seed % 4, 1 + seed % 6, 40, seed};
    const auto inst = std::get<SetCoverInstance>(generate(spec));
    for (bool binary : {false, true}) {
      const auto p = set_cover_to_ilp(inst, binary);
      EXPECT_EQ(p.num_constraints, inst.universe_size + 1);
      EXPECT_EQ(p.num_vars, inst.sets.size());
      const auto d = compute_delta(p);
      if (!inst.sets.empty()) EXPECT_EQ(d.delta_a, 1);
      EXPECT_EQ(d.b_inf_norm, std::max<std::size_t>(inst.universe_size ? 1 : 0, inst.budget));
      EXPECT_EQ(p.is_binary(), binary);
    }
  }
}

TEST(SetCoverModel, FeasibleIffSmallCoverRandom) {
  SeededRng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    SetCoverInstance inst;
    inst.universe_size = 1 + rng.below(5);
    const auto f = rng.below(7);
    for (std::size_t i = 0; i < f; ++i) {
      std::vector<std::size_t> s;
      for (std::size_t e = 0; e < inst.universe_size; ++e)
        if (rng.percent(40)) s.push_back(e);
      inst.sets.push_back(s);
    }
    inst.budget = rng.below(f + 1);
    const bool truth = has_cover_of_size(inst);
    EXPECT_EQ(brute_force_feasibility(set_cover_to_ilp(inst, true), BigInt(1)).feasible(), truth);
    EXPECT_EQ(brute_force_feasibility(set_cover_to_ilp(inst, false), BigInt(std::max<std::size_t>(1, inst.budget)))
                  .feasible(),
              truth);
  }
}

TEST(SetCoverModel, RejectsOutOfUniverseElements) {
  SetCoverInstance inst{2, {{0, 2}}, 1};
  EXPECT_THROW(inst.validate(), InvariantError);
}

TEST(VertexCoverApprox, SingleEdgeAndEmpty) {
  EXPECT_EQ(vc_2approx(testing::path_graph(2)).vertices, (std::vector<std::size_t>{0, 1}));
  const auto empty = vc_2approx(Graph(4));
  EXPECT_TRUE(empty.vertices.empty());
  EXPECT_TRUE(empty.is_cover);
}

TEST(VertexCoverApprox, PetersenWithinTwiceOptimum) {
  const auto g = testing::petersen_graph();
  std::vector<BigInt> unit(10, BigInt(1));
  EXPECT_EQ(brute_min_wvc(g, unit), 6);
  const auto y = vc_2approx(g);
  EXPECT_TRUE(y.is_cover);
  EXPECT_LE(y.vertices.size(), 12u);
}

TEST(VertexCoverApprox, CoverAndFactorTwoOnAllSmallGraphs) {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& g : testing::all_graphs(n)) {
      const auto y = vc_2approx(g);
      EXPECT_TRUE(make_witness_set(g, y.vertices).is_cover);
      EXPECT_LE(BigInt(y.vertices.size()), 2 * brute_min_wvc(g, std::vector<BigInt>(n, BigInt(1))));
    }
}

TEST(WvcModel, TriangleAnyTwoVertexCover) {
  WvcInstance inst{testing::complete_graph(3), {1, 1, 1}, 2};
  const auto y = make_witness_set(inst.graph, {0, 2});
  ASSERT_TRUE(y.is_cover);
  EXPECT_TRUE(milp_feasibility(wvc_to_milp(inst, y)).feasible());
  EXPECT_TRUE(brute_force_feasibility(wvc_to_binary_ilp(inst, y), BigInt(1)).feasible());
}

TEST(WvcModel, WeightedStar) {
  WvcInstance inst{testing::star_graph(3), {5, 1, 1, 1}, 3};
  const auto y = vc_2approx(inst.graph);
  EXPECT_TRUE(milp_feasibility(wvc_to_milp(inst, y)).feasible());
  inst.budget = 2;
  EXPECT_FALSE(milp_feasibility(wvc_to_milp(inst, y)).feasible());
}

TEST(WvcModel, IsolatedVerticesOnly) {
  WvcInstance inst{Graph(3), {1, 2, 3}, 0};
  const auto y = vc_2approx(inst.graph);
  const auto p = wvc_to_milp(inst, y);
  EXPECT_EQ(p.num_constraints, 1u);
  const auto r = milp_feasibility(p);
  ASSERT_TRUE(r.feasible());
  for (const auto& v : *r.certificate) EXPECT_EQ(v, 0);
}

TEST(WvcModel, PathWithHeavyMiddle) {
  WvcInstance inst{testing::path_graph(3), {1, 10, 1}, 2};
  const auto y = vc_2approx(inst.graph);
  const auto r = brute_force_feasibility(wvc_to_binary_ilp(inst, y), BigInt(1));
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(r.integer_certificate(), (std::vector<BigInt>{1, 0, 1}));
}

TEST(WvcModel, RejectsNonCoverNamingEdge) {
  WvcInstance inst{testing::path_graph(3), {1, 1, 1}, 2};
  try {
    wvc_to_milp(inst, make_witness_set(inst.graph, {0}));
    FAIL() << "expected invariant error";
  } catch (const InvariantError& e) {
    EXPECT_NE(std::string(e.what()).find("1"), std::string::npos);
  }
}

TEST(WvcModel, ShapeAndEntryAudit) {
  SeededRng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    WvcInstance inst;
    inst.graph = random_graph(rng, 2 + rng.below(6), 50);
    for (std::size_t v = 0; v < inst.graph.num_vertices(); ++v) inst.weights.push_back(1 + rng.below(3));
    inst.budget = rng.below(8);
    const auto y = vc_2approx(inst.graph);
    const auto milp = wvc_to_milp(inst, y);
    const auto bin = wvc_to_binary_ilp(inst, y);
    EXPECT_EQ(milp.num_constraints, y.vertices.size() + 1);
    EXPECT_EQ(bin.num_constraints, y.vertices.size() + 1);
    EXPECT_EQ(milp.integral_count(), y.vertices.size());
    EXPECT_EQ(bin.integral_count(), inst.graph.num_vertices());
    EXPECT_TRUE(bin.is_binary());
    const auto audit = wvc_entry_audit(inst, bin);
    EXPECT_TRUE(audit.within_bound);
  }
}

TEST(WvcModel, ExtractedCoverIsValid) {
  SeededRng rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    WvcInstance inst;
    inst.graph = random_graph(rng, 2 + rng.below(5), 50);
    for (std::size_t v = 0; v < inst.graph.num_vertices(); ++v) inst.weights.push_back(1 + rng.below(3));
    inst.budget = rng.below(10);
    const auto y = vc_2approx(inst.graph);
    const auto r = milp_feasibility(wvc_to_milp(inst, y));
    const BigInt opt = brute_min_wvc(inst.graph, inst.weights);
    EXPECT_EQ(r.feasible(), opt <= inst.budget);
    if (!r.feasible()) continue;
    const auto cover = extract_cover(*r.certificate);
    EXPECT_TRUE(make_witness_set(inst.graph, cover).is_cover);
    BigInt weight = 0;
    for (auto v : cover) weight += inst.weights[v];
    EXPECT_LE(weight, inst.budget);
  }
}

}  // namespace
}  // namespace compact_ilp
