#include <gtest/gtest.h>

#include "compact_ilp/corpus.hpp"
#include "compact_ilp/errors.hpp"
#include "compact_ilp/exact.hpp"
#include "compact_ilp/protocols.hpp"
#include "test_support.hpp"

namespace compact_ilp {
namespace {

using testing::complete_graph;
using testing::path_graph;
using testing::star_graph;

VerifierReport run(const Protocol& p, const ProblemInstance& inst, const BitString& w) {
  const auto pre = p.preprocess(inst);
  return p.load(pre.advice)->verify(w);
}

bool enumerate(const ProblemInstance& inst) {
  return enumerate_decide(*make_protocol(variant_of(inst)), inst).yes;
}

Graph two_triangles() { return Graph::from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}}); }

TEST(Bits, FieldWidthAndHex) {
  EXPECT_EQ(field_width(0), 0u);
  EXPECT_EQ(field_width(1), 0u);
  EXPECT_EQ(field_width(2), 1u);
  EXPECT_EQ(field_width(17), 5u);
  const auto b = BitString::from_index(0b101101, 6);
  EXPECT_EQ(b.to_hex(), "b4");
  EXPECT_EQ(BitString::from_hex("b4", 6), b);
  EXPECT_EQ(BitString::from_hex("0xB4", 6), b);
  EXPECT_THROW(BitString::from_hex("b5", 6), ParseError);
  EXPECT_THROW(BitString::from_hex("b4", 9), ParseError);
  EXPECT_THROW(BitString::from_hex("zz", 8), ParseError);
  EXPECT_EQ(BitString(0).to_hex(), "");
}

TEST(Bits, WriterReader) {
  BitWriter w;
  w.put(5, 3);
  w.flag(true);
  w.put(0, 0);
  EXPECT_THROW(w.put(4, 2), UsageError);
  const auto bits = w.finish();
  BitReader r(bits);
  EXPECT_EQ(r.get(3), 5u);
  EXPECT_TRUE(r.flag());
  EXPECT_THROW(r.get(1), UsageError);
}

TEST(RWayCut, TwoTrianglesNeedTwoEdges) {
  const auto p = rwaycut_protocol();
  EXPECT_FALSE(enumerate(RWayCutInstance{two_triangles(), 3, 1}));
  const RWayCutInstance yes{two_triangles(), 3, 2};
  EXPECT_EQ(p->length_formula(yes), 28u);
  const RWayCutWitness w{{0, 1}, {{0, 1}}};
  const auto bits = encode(RWayCutLayout::of(yes), w);
  const auto report = run(*p, yes, bits);
  EXPECT_TRUE(report.accept) << report.reason;
  const RWayCutWitness short_cut{{0}, {{0, 1}}};
  EXPECT_FALSE(run(*p, yes, encode(RWayCutLayout::of(yes), short_cut)).accept);
}

TEST(RWayCut, PathAnyEdge) { EXPECT_TRUE(enumerate(RWayCutInstance{path_graph(4), 2, 1})); }

TEST(RWayCut, K4NoWitnessWithTwoEdges) {
  const RWayCutInstance inst{complete_graph(4), 2, 2};
  EXPECT_FALSE(decide_exact(inst));
  EXPECT_FALSE(enumerate(inst));
}

TEST(RWayCut, EarlyNoWhenComponentsPlusKBelowR) {
  const RWayCutInstance inst{path_graph(3), 5, 1};
  const auto p = rwaycut_protocol();
  const auto pre = p->preprocess(inst);
  const auto report = p->load(pre.advice)->verify(BitString(pre.ell));
  EXPECT_FALSE(report.accept);
  EXPECT_EQ(report.reason, "components-plus-k-below-r");
}

TEST(MultiwayCut, StarCenterSeparatesLeaves) {
  const MultiwayCutInstance inst{star_graph(3), {1, 2, 3}, 2};
  const auto report =
      run(*multiwaycut_protocol(), inst, encode(MultiwayCutLayout::of(inst), MultiwayCutWitness{{0}}));
  EXPECT_TRUE(report.accept) << report.reason;
  EXPECT_EQ(report.calls.at("failure-oracle"), 1u + 3u);
}

TEST(MultiwayCut, TooManyTerminalsRejectedAtIngest) {
  EXPECT_THROW(multiwaycut_protocol()->preprocess(MultiwayCutInstance{star_graph(3), {1, 2, 3}, 1}), UsageError);
}

TEST(MultiwayCut, AdjacentTerminalsInseparable) {
  EXPECT_FALSE(enumerate(MultiwayCutInstance{complete_graph(3), {0, 1, 2}, 2}));
}

TEST(MultiwayCut, TerminalInCutRejected) {
  const MultiwayCutInstance inst{star_graph(3), {0, 1}, 1};
  EXPECT_FALSE(run(*multiwaycut_protocol(), inst, encode(MultiwayCutLayout::of(inst), MultiwayCutWitness{{0}})).accept);
}

TEST(Mcsp, SwapAndIdentity) {
  const auto p = mcsp_protocol();
  const McspInstance swap{"ab", "ba", 2};
  const auto r1 = run(*p, swap, encode(McspLayout::of(swap), McspWitness{{1, 2}, {1, 0}}));
  EXPECT_TRUE(r1.accept) << r1.reason;
  EXPECT_EQ(r1.total_calls(), 5u);
  const McspInstance same{"ab", "ab", 1};
  const auto r2 = run(*p, same, encode(McspLayout::of(same), McspWitness{{2}, {0}}));
  EXPECT_TRUE(r2.accept) << r2.reason;
  EXPECT_EQ(r2.total_calls(), 3u);
}

TEST(Mcsp, RejectsBadCutsAndPermutations) {
  const McspInstance inst{"abc", "bca", 2};
  const McspLayout L = McspLayout::of(inst);
  BitWriter w;
  w.put(2, 2);
  w.put(1, 2);
  w.put(0, 1);
  w.put(1, 1);
  EXPECT_FALSE(run(*mcsp_protocol(), inst, w.finish()).accept);
  EXPECT_FALSE(run(*mcsp_protocol(), inst, encode(L, McspWitness{{1, 3}, {0, 0}})).accept);
  EXPECT_TRUE(run(*mcsp_protocol(), inst, encode(L, McspWitness{{1, 3}, {1, 0}})).accept);
}

TEST(Mcsp, AuditLengthForSixteen) {
  const McspInstance inst{std::string(16, 'a'), std::string(16, 'a'), 2};
  const auto report = audit_costs(*mcsp_protocol(), inst);
  EXPECT_EQ(report.ell, 12u);
  EXPECT_EQ(report.ell_formula, 12u);
  EXPECT_TRUE(report.ok());
}

TEST(LongPath, TriangleHamiltonian) {
  const LongPathInstance inst{complete_graph(3), 3};
  EXPECT_TRUE(enumerate(inst));
  const auto x = fvs_2approx(inst.graph);
  ASSERT_EQ(x.size(), 1u);
  const LongPathLayout L{3, 1};
  std::vector<std::size_t> path;
  for (std::size_t v = 0; v < 3; ++v)
    if (v != x[0]) path.push_back(v);
  path.push_back(x[0]);
  const auto report = run(*longpath_protocol(), inst, encode(L, longpath_items(path, x)));
  EXPECT_TRUE(report.accept) << report.reason;
}

TEST(LongPath, TreesReachLongestPath) {
  SeededRng rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = testing::random_tree(rng, 2 + rng.below(7));
    const auto best = longest_path_vertices(g);
    EXPECT_TRUE(enumerate(LongPathInstance{g, best}));
    EXPECT_FALSE(enumerate(LongPathInstance{g, best + 1}));
  }
}

TEST(LongPath, TooLongForCycle) { EXPECT_FALSE(enumerate(LongPathInstance{testing::cycle_graph(5), 6})); }

TEST(LongPath, FvsWithinTwiceOptimum) {
  SeededRng rng(52);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = 1 + rng.below(8);
    const auto g = random_graph(rng, n, 40);
    const auto x = fvs_2approx(g);
    EXPECT_TRUE(is_feedback_vertex_set(g, x));
    std::size_t opt = n;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<std::size_t> s;
      for (std::size_t v = 0; v < n; ++v)
        if (mask >> v & 1) s.push_back(v);
      if (s.size() < opt && is_feedback_vertex_set(g, s)) opt = s.size();
    }
    EXPECT_LE(x.size(), 2 * opt);
  }
}

TEST(Steiner, PathEndpoints) {
  const auto p = steiner_protocol();
  const SteinerInstance yes{path_graph(3), {0, 2}, 2};
  const auto report = run(*p, yes, encode(SteinerLayout::of(yes), SteinerWitness{{}, {0}}));
  EXPECT_TRUE(report.accept) << report.reason;
  EXPECT_FALSE(enumerate(SteinerInstance{path_graph(3), {0, 2}, 1}));
}

TEST(Steiner, TerminalAsSteinerVertexRejected) {
  const SteinerInstance inst{path_graph(4), {0, 3}, 3};
  EXPECT_FALSE(run(*steiner_protocol(), inst, encode(SteinerLayout::of(inst), SteinerWitness{{3}, {0, 1}})).accept);
}

TEST(Discretization, VerticalLine) {
  const DiscretizationInstance inst{{{0, 0}}, {{1, 1}}, 1};
  const auto report =
      run(*discretization_protocol(), inst, encode(discretization_layout(inst), DiscretizationWitness{{0}, {}}));
  EXPECT_TRUE(report.accept) << report.reason;
}

TEST(Discretization, SameColumnNeedsHorizontalLine) {
  const DiscretizationInstance inst{{{0, 0}}, {{0, 1}}, 1};
  const auto L = discretization_layout(inst);
  EXPECT_EQ(L.px, 0u);
  EXPECT_FALSE(run(*discretization_protocol(), inst, encode(L, DiscretizationWitness{{}, {}})).accept);
  EXPECT_TRUE(run(*discretization_protocol(), inst, encode(L, DiscretizationWitness{{}, {0}})).accept);
}

TEST(Discretization, RandomFourPlusFour) {
  SeededRng rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    GenSpec spec{Variant::Discretization, GenMode::Random, 8, 1 + rng.below(3), 4, 0, 500 + rng.next() % 1000};
    const auto inst = generate(spec);
    const auto p = discretization_protocol();
    if (p->length_formula(inst) > 20) continue;
    EXPECT_EQ(enumerate(inst), decide_exact(inst));
  }
}

TEST(Drivers, EnumerationGuard) {
  const RWayCutInstance big{two_triangles(), 3, 2};
  EXPECT_THROW(enumerate_decide(*rwaycut_protocol(), big, 24), BudgetError);
  const auto past = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  EXPECT_THROW(enumerate_decide(*mcsp_protocol(), McspInstance{"abcd", "dcba", 3}, 24, past), BudgetError);
}

TEST(Drivers, VerifyRejectsWrongLength) {
  const McspInstance inst{"ab", "ba", 2};
  const auto p = mcsp_protocol();
  const auto v = p->load(p->preprocess(inst).advice);
  EXPECT_THROW(v->verify(BitString(v->witness_length() + 1)), UsageError);
}

TEST(Drivers, MalformedAdviceIsParseError) {
  EXPECT_THROW(mcsp_protocol()->load("garbage"), ParseError);
  const auto advice = steiner_protocol()->preprocess(SteinerInstance{path_graph(3), {0, 2}, 2}).advice;
  EXPECT_THROW(mcsp_protocol()->load(advice), ParseError);
}

TEST(Drivers, MultiwayAuditQueriesWithinPairs) {
  SeededRng rng(54);
  const auto g = random_graph(rng, 9, 40);
  const MultiwayCutInstance inst{g, {0, 2, 4, 6}, 2};
  const auto report = audit_costs(*multiwaycut_protocol(), inst);
  EXPECT_TRUE(report.ok());
  EXPECT_LE(report.calls, 1u + 6u);
  const auto j = report.to_json();
  for (const char* key : {"protocol", "n", "k", "ell", "steps", "calls"}) EXPECT_TRUE(j.contains(key)) << key;
}

// Structured properties over every protocol instance of the shipped corpus.

template <typename Layout>
void check_codec(const Layout& L, std::size_t ell, SeededRng& rng) {
  ASSERT_EQ(L.length(), ell);
  const std::uint64_t total = ell <= 12 ? (std::uint64_t{1} << ell) : 512;
  std::size_t decoded = 0;
  for (std::uint64_t i = 0; i < total; ++i) {
    const auto bits = ell <= 12 ? BitString::from_index(i, ell) : BitString::from_index(rng.next(), std::min<std::size_t>(ell, 64));
    if (bits.size() != ell) continue;
    const auto d = decode(L, bits);
    if (d.value) {
      ++decoded;
      ASSERT_EQ(encode(L, *d.value), bits);
    } else {
      ASSERT_FALSE(d.reason.empty());
    }
  }
  if (ell <= 12) EXPECT_GT(decoded, 0u);
}

class CorpusProtocols : public ::testing::Test {
 protected:
  static std::vector<ProblemInstance> instances() {
    std::vector<ProblemInstance> out;
    for (const auto& e : default_corpus())
      if (has_protocol(e.spec.variant)) out.push_back(generate(e.spec));
    return out;
  }
};

TEST_F(CorpusProtocols, CodecRoundTripAndTotality) {
  SeededRng rng(55);
  for (const auto& inst : instances()) {
    const auto p = make_protocol(variant_of(inst));
    const auto ell = p->preprocess(inst).ell;
    ASSERT_EQ(ell, p->length_formula(inst));
    std::visit(
        [&](const auto& i) {
          using T = std::decay_t<decltype(i)>;
          if constexpr (std::is_same_v<T, RWayCutInstance>) check_codec(RWayCutLayout::of(i), ell, rng);
          else if constexpr (std::is_same_v<T, MultiwayCutInstance>) check_codec(MultiwayCutLayout::of(i), ell, rng);
          else if constexpr (std::is_same_v<T, McspInstance>) check_codec(McspLayout::of(i), ell, rng);
          else if constexpr (std::is_same_v<T, LongPathInstance>)
            check_codec(LongPathLayout{i.graph.num_vertices(), fvs_2approx(i.graph).size()}, ell, rng);
          else if constexpr (std::is_same_v<T, SteinerInstance>) check_codec(SteinerLayout::of(i), ell, rng);
          else if constexpr (std::is_same_v<T, DiscretizationInstance>) check_codec(discretization_layout(i), ell, rng);
        },
        inst);
  }
}

TEST_F(CorpusProtocols, VerifierIsPure) {
  SeededRng rng(56);
  for (const auto& inst : instances()) {
    const auto p = make_protocol(variant_of(inst));
    const auto pre = p->preprocess(inst);
    EXPECT_EQ(p->preprocess(inst).advice, pre.advice);
    const auto v1 = p->load(pre.advice);
    const auto v2 = p->load(pre.advice);
    for (int s = 0; s < 16; ++s) {
      const auto bits = BitString::from_index(rng.next(), pre.ell);
      const auto r = v1->verify(bits);
      EXPECT_EQ(v1->verify(bits), r);
      EXPECT_EQ(v2->verify(bits), r);
      EXPECT_EQ(r.to_json().dump(), v2->verify(bits).to_json().dump());
      EXPECT_EQ(r.witness_bits, pre.ell);
      EXPECT_EQ(r.accept, r.reason.empty());
    }
  }
}

TEST_F(CorpusProtocols, AcceptedWitnessesOnlyOnYesInstances) {
  for (const auto& inst : instances()) {
    const auto p = make_protocol(variant_of(inst));
    const auto e = enumerate_decide(*p, inst);
    EXPECT_EQ(e.yes, decide_exact(inst)) << write_instance(inst);
    if (e.yes) {
      ASSERT_TRUE(e.witness.has_value());
      EXPECT_TRUE(run(*p, inst, *e.witness).accept);
    }
    const auto audit = audit_costs(*p, inst);
    EXPECT_TRUE(audit.ok()) << (audit.failures.empty() ? "" : audit.failures.front());
  }
}

}  // namespace
}  // namespace compact_ilp
