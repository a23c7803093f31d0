#include <gtest/gtest.h>

#include "compact_ilp/corpus.hpp"
#include "compact_ilp/errors.hpp"
#include "compact_ilp/exact.hpp"
#include "compact_ilp/generate.hpp"
#include "test_support.hpp"

namespace compact_ilp {
namespace {

TEST(DecideExact, SpecimenVerdicts) {
  EXPECT_TRUE(decide_exact(McspInstance{"ab", "ba", 2}));
  EXPECT_FALSE(decide_exact(McspInstance{"ab", "ba", 1}));
  EXPECT_FALSE(decide_exact(RWayCutInstance{testing::complete_graph(4), 2, 2}));
  EXPECT_TRUE(decide_exact(RWayCutInstance{testing::complete_graph(4), 2, 3}));
  EXPECT_TRUE(decide_exact(SteinerInstance{testing::path_graph(3), {0, 2}, 2}));
  EXPECT_FALSE(decide_exact(SteinerInstance{testing::path_graph(3), {0, 2}, 1}));
}

TEST(DecideExact, TwoTrianglesRWayCut) {
  const auto g = Graph::from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
  EXPECT_FALSE(decide_exact(RWayCutInstance{g, 3, 1}));
  EXPECT_TRUE(decide_exact(RWayCutInstance{g, 3, 2}));
  EXPECT_TRUE(decide_exact(RWayCutInstance{g, 2, 0}));
}

TEST(DecideExact, MultiwayCutAndLongPath) {
  EXPECT_TRUE(decide_exact(MultiwayCutInstance{testing::star_graph(3), {1, 2, 3}, 1}));
  EXPECT_FALSE(decide_exact(MultiwayCutInstance{testing::complete_graph(3), {0, 1, 2}, 3}));
  EXPECT_TRUE(decide_exact(LongPathInstance{testing::complete_graph(3), 3}));
  EXPECT_FALSE(decide_exact(LongPathInstance{testing::cycle_graph(5), 6}));
  EXPECT_TRUE(decide_exact(LongPathInstance{testing::cycle_graph(5), 0}));
  EXPECT_FALSE(decide_exact(LongPathInstance{testing::star_graph(4), 4}));
}

TEST(DecideExact, DiscretizationAndCovers) {
  EXPECT_TRUE(decide_exact(DiscretizationInstance{{{0, 0}}, {{1, 1}}, 1}));
  EXPECT_TRUE(decide_exact(DiscretizationInstance{{{0, 0}}, {{0, 1}}, 1}));
  EXPECT_FALSE(decide_exact(DiscretizationInstance{{{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}, 1}));
  EXPECT_TRUE(decide_exact(DiscretizationInstance{{{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}, 2}));
  EXPECT_TRUE(decide_exact(SetCoverInstance{3, {{0, 1}, {2}}, 2}));
  EXPECT_FALSE(decide_exact(SetCoverInstance{3, {{0, 1}, {2}}, 1}));
  EXPECT_TRUE(decide_exact(WvcInstance{testing::star_graph(3), {5, 1, 1, 1}, 3}));
  EXPECT_FALSE(decide_exact(WvcInstance{testing::star_graph(3), {5, 1, 1, 1}, 2}));
}

TEST(DecideExact, GuardsRaiseBudgetError) {
  EXPECT_THROW(decide_exact(LongPathInstance{testing::path_graph(11), 3}), BudgetError);
  EXPECT_THROW(decide_exact(McspInstance{"abcdefghi", "abcdefghi", 1}), BudgetError);
  ExactGuards loose;
  loose.max_vertices = 12;
  EXPECT_TRUE(decide_exact(LongPathInstance{testing::path_graph(11), 11}, loose));
}

TEST(ExactHelpers, AgreeWithHandValues) {
  EXPECT_EQ(longest_path_vertices(testing::petersen_graph()), 10u);
  EXPECT_EQ(longest_path_vertices(testing::star_graph(5)), 3u);
  EXPECT_EQ(longest_path_vertices(Graph()), 0u);
  EXPECT_EQ(min_steiner_edges(testing::cycle_graph(6), {0, 2, 4}), 4u);
  EXPECT_FALSE(min_steiner_edges(Graph(3), {0, 2}).has_value());
  EXPECT_EQ(min_set_cover(SetCoverInstance{4, {{0, 1}, {2}, {3}, {1, 2, 3}}, 0}), 2u);
  EXPECT_FALSE(min_set_cover(SetCoverInstance{2, {{0}}, 0}).has_value());
  EXPECT_EQ(min_weight_vertex_cover(testing::complete_graph(4), {1, 1, 1, 1}), 3);
  EXPECT_TRUE(separates({{0, 0}}, {{1, 1}}, {Rational(1, 2)}, {}));
  EXPECT_FALSE(separates({{0, 0}}, {{0, 1}}, {Rational(1, 2)}, {}));
}

TEST(InstanceIo, TriangleGraph) {
  const auto inst = parse_instance("problem long-path\np 3 3\ne 0 1\ne 0 2\ne 1 2\nl 3\n");
  const auto& lp = std::get<LongPathInstance>(inst);
  EXPECT_EQ(lp.graph.num_vertices(), 3u);
  EXPECT_EQ(lp.graph.num_edges(), 3u);
}

TEST(InstanceIo, UnknownTerminalIsValidityError) {
  EXPECT_THROW(parse_instance("problem steiner\np 3 1\ne 0 1\nt 0\nt 7\nl 2\n"), InvariantError);
}

TEST(InstanceIo, ErrorsCarryLineNumbers) {
  try {
    parse_instance("problem mcsp\nx ab\ny ba\nk two\n");
    FAIL() << "expected parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  EXPECT_THROW(parse_instance("problem nonsense\n"), ParseError);
  EXPECT_THROW(parse_instance("problem mcsp\nx ab\ny ba\nk 1\n", Variant::Steiner), ParseError);
  EXPECT_THROW(parse_instance("problem mcsp\nx ab\ny abc\nk 1\n"), InvariantError);
  EXPECT_THROW(parse_instance("problem discretization\npt 1 0 0\npt 2 0 0\nk 1\n"), InvariantError);
}

TEST(InstanceIo, CommentsAndRationals) {
  const auto inst = parse_instance("# a comment\nproblem discretization\npt 1 1/2 -3\npt 2 0.25 2 # trailing\nk 1\n");
  const auto& d = std::get<DiscretizationInstance>(inst);
  EXPECT_EQ(d.w1[0].x, Rational(1, 2));
  EXPECT_EQ(d.w1[0].y, -3);
  EXPECT_EQ(d.w2[0].x, Rational(1, 4));
}

TEST(InstanceIo, RoundTripOverCorpus) {
  for (const auto& entry : default_corpus()) {
    const auto inst = generate(entry.spec);
    const auto text = write_instance(inst);
    const auto back = parse_instance(text);
    EXPECT_EQ(back, inst) << text;
    EXPECT_EQ(write_instance(back), text);
  }
}

TEST(Generate, Deterministic) {
  for (std::uint64_t seed = 0; seed < 24; ++seed) {
    GenSpec spec{static_cast<Variant>(seed % 8), static_cast<GenMode>(seed % 3), 5, 2, 3, 50, seed};
    EXPECT_EQ(write_instance(generate(spec)), write_instance(generate(spec)));
    EXPECT_EQ(spec_from_json(spec_to_json(spec)), spec);
  }
}

TEST(Generate, PlantedSetCover) {
  GenSpec spec{Variant::SetCover, GenMode::PlantedYes, 5, 2, 5, 40, 7};
  EXPECT_TRUE(decide_exact(generate(spec)));
}

TEST(Generate, ForcedNoMcsp) {
  GenSpec spec{Variant::Mcsp, GenMode::ForcedNo, 6, 1, 2, 0, 3};
  const auto inst = std::get<McspInstance>(generate(spec));
  EXPECT_NE(inst.x, inst.y);
  EXPECT_FALSE(decide_exact(inst));
}

TEST(Generate, ModesHoldAcrossSeeds) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const auto v = static_cast<Variant>(seed % 8);
    for (auto mode : {GenMode::PlantedYes, GenMode::ForcedNo}) {
      GenSpec spec{v, mode, 5, 2, 3, 45, seed};
      const auto inst = generate(spec);
      EXPECT_EQ(decide_exact(inst), mode == GenMode::PlantedYes) << family_of(spec) << " seed " << seed;
    }
  }
}

TEST(Corpus, ManifestRoundTripAndCheck) {
  const auto entries = default_corpus();
  const auto parsed = parse_manifest(write_manifest(entries));
  ASSERT_EQ(parsed.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) EXPECT_EQ(parsed[i].spec, entries[i].spec);
  const auto summary = run_check(parsed);
  EXPECT_TRUE(summary.ok()) << (summary.failures.empty() ? "" : summary.failures.front());
  EXPECT_EQ(summary.total(), entries.size());
}

TEST(Corpus, CorruptedVerdictIsNamed) {
  auto entries = default_corpus();
  ASSERT_FALSE(entries.empty());
  entries.resize(3);
  entries[1].expected = !entries[1].expected;
  const auto summary = run_check(entries);
  ASSERT_EQ(summary.failures.size(), 1u);
  EXPECT_NE(summary.failures[0].find(std::to_string(entries[1].spec.seed)), std::string::npos);
}

TEST(Corpus, EmptyManifestPasses) {
  const auto summary = run_check(parse_manifest("[]"));
  EXPECT_TRUE(summary.ok());
  EXPECT_EQ(summary.total(), 0u);
  EXPECT_THROW(parse_manifest("{}"), ParseError);
  EXPECT_THROW(parse_manifest(R"([{"spec":{},"expected":"maybe"}])"), ParseError);
}

}  // namespace
}  // namespace compact_ilp
