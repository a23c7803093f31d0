#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "compact_ilp/errors.hpp"
#include "compact_ilp/integer_program.hpp"
#include "compact_ilp/modelers.hpp"
#include "compact_ilp/program_io.hpp"
#include "compact_ilp/solve.hpp"
#include "test_support.hpp"

namespace compact_ilp {
namespace {

using testing::program_from_rows;
using testing::random_program;

TEST(ComputeDelta, MaxAbsoluteEntryAndRhs) {
  const auto p = program_from_rows({{2, -3}}, {5}, Sense::LessEq, 2);
  const auto d = compute_delta(p);
  EXPECT_EQ(d.delta_a, 3);
  EXPECT_EQ(d.b_inf_norm, 5);
}

TEST(ComputeDelta, EmptyProgram) {
  const auto d = compute_delta(IntegerProgram::standard(0, 0));
  EXPECT_EQ(d.delta_a, 0);
  EXPECT_EQ(d.b_inf_norm, 0);
}

TEST(ComputeDelta, SetCoverProgramHasUnitEntries) {
  SetCoverInstance inst{4, {{0, 1}, {1, 2, 3}, {0, 3}}, 2};
  EXPECT_EQ(compute_delta(set_cover_to_ilp(inst, false)).delta_a, 1);
}

TEST(EqualityForm, SingleRowGainsSlack) {
  const auto p = program_from_rows({{1}}, {3}, Sense::LessEq, 1);
  const auto q = to_equality_form(p);
  EXPECT_EQ(q.sense, Sense::Eq);
  EXPECT_EQ(q.num_vars, 2u);
  EXPECT_EQ(q.num_constraints, 1u);
  EXPECT_EQ(q.dense(), (std::vector<std::vector<BigInt>>{{1, 1}}));
  EXPECT_EQ(q.rhs, std::vector<BigInt>{3});
}

TEST(EqualityForm, TwoRowsGainIdentityBlock) {
  const auto q = to_equality_form(program_from_rows({{1, 1}, {2, -1}}, {4, 1}, Sense::LessEq, 2));
  EXPECT_EQ(q.dense(), (std::vector<std::vector<BigInt>>{{1, 1, 1, 0}, {2, -1, 0, 1}}));
  EXPECT_EQ(q.rhs, (std::vector<BigInt>{4, 1}));
}

TEST(EqualityForm, EmptyMatrixGetsUnitDelta) {
  auto p = IntegerProgram::standard(1, 0);
  p.rhs = {0};
  const auto q = to_equality_form(p);
  EXPECT_EQ(compute_delta(q).delta_a, 1);
}

TEST(EqualityForm, RejectsUpperBoundsAndEqualitySense) {
  auto bounded = program_from_rows({{1}}, {3}, Sense::LessEq, 1);
  bounded.upper[0] = BigInt(2);
  EXPECT_THROW(to_equality_form(bounded), UsageError);
  EXPECT_THROW(to_equality_form(program_from_rows({{1}}, {3}, Sense::Eq, 1)), UsageError);
}

TEST(EqualityForm, DeltaLawAndShapeOnRandomPrograms) {
  SeededRng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const auto m = 1 + rng.below(3), n = 1 + rng.below(4);
    const auto p = random_program(rng, m, n, 3, 6, Sense::LessEq);
    const auto q = to_equality_form(p);
    EXPECT_EQ(q.num_constraints, m);
    EXPECT_EQ(q.num_vars, n + m);
    EXPECT_EQ(compute_delta(q).delta_a, std::max(BigInt(1), compute_delta(p).delta_a));
  }
}

// Solutions map both ways: a box solution of the inequality system extends by
// its slack, and an equality-form certificate projects to the first n
// coordinates. The lattice engine decides the equality form completely.
TEST(EqualityForm, FeasibilityPreservedOnRandomSmallPrograms) {
  SeededRng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = 1 + rng.below(3), n = 1 + rng.below(4);
    const auto p = random_program(rng, m, n, 2, 6, Sense::LessEq);
    const auto q = to_equality_form(p);
    const auto box = brute_force_feasibility(p, BigInt(4));
    const auto lat = lattice_feasibility(q);
    ASSERT_NE(lat.status, SolveStatus::BoundExhausted);
    if (box.feasible()) {
      EXPECT_TRUE(lat.feasible());
      auto x = box.integer_certificate();
      for (std::size_t i = 0; i < m; ++i) {
        BigInt lhs = 0;
        for (const auto& e : p.entries)
          if (e.row == i) lhs += e.coef * x[e.col];
        x.push_back(p.rhs[i] - lhs);
      }
      EXPECT_TRUE(testing::rows_hold(q, x));
    }
    if (lat.feasible()) {
      auto y = lat.integer_certificate();
      y.resize(n);
      EXPECT_TRUE(testing::rows_hold(p, y));
    }
  }
}

TEST(ProgramIo, OneByOneJsonRoundTrip) {
  const auto p = program_from_rows({{7}}, {-2}, Sense::Eq, 1);
  const auto text = export_program(p, ProgramFormat::CanonicalJson);
  EXPECT_EQ(import_program(text, ProgramFormat::CanonicalJson), p);
  EXPECT_EQ(export_program(import_program(text, ProgramFormat::CanonicalJson), ProgramFormat::CanonicalJson), text);
}

TEST(ProgramIo, RandomProgramsRoundTripInEveryFormat) {
  SeededRng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    auto p = random_program(rng, rng.below(4), 1 + rng.below(5), 9, 20,
                            rng.below(2) ? Sense::Eq : Sense::LessEq);
    for (std::size_t j = 0; j < p.num_vars; ++j) {
      if (rng.below(3) == 0) p.upper[j] = BigInt(rng.below(5));
      if (rng.below(4) == 0) p.integral[j] = false;
    }
    if (rng.below(2)) {
      std::vector<BigInt> c;
      for (std::size_t j = 0; j < p.num_vars; ++j) c.push_back(static_cast<long>(rng.below(7)) - 3);
      p.objective = c;
    }
    for (auto fmt : {ProgramFormat::CanonicalJson, ProgramFormat::LpText, ProgramFormat::MpsText}) {
      const auto text = export_program(p, fmt);
      EXPECT_EQ(import_program(text, fmt), p) << text;
    }
  }
}

TEST(ProgramIo, SetCoverLpHasOneLinePerConstraint) {
  SetCoverInstance inst{2, {{0}, {1}, {0, 1}}, 2};
  const auto text = export_program(set_cover_to_ilp(inst, false), ProgramFormat::LpText);
  std::size_t rows = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (line.rfind(" c", 0) == 0) ++rows;
  EXPECT_EQ(rows, 3u) << text;
}

TEST(ProgramIo, StrictFixedMpsRejectsHugeCoefficient) {
  auto p = IntegerProgram::standard(1, 1);
  p.add(0, 0, BigInt("10000000000000000000000000000000000000000"));
  p.rhs[0] = 1;
  EXPECT_NO_THROW(export_program(p, ProgramFormat::MpsText));
  try {
    export_program(p, ProgramFormat::MpsText, ExportOptions{true});
    FAIL() << "expected overflow";
  } catch (const InvariantError& e) {
    EXPECT_NE(std::string(e.what()).find("c0"), std::string::npos) << e.what();
  }
}

TEST(ProgramIo, MalformedJsonIsParseError) {
  EXPECT_THROW(import_program("{\"m\": 1,", ProgramFormat::CanonicalJson), ParseError);
}

TEST(ProgramIo, DuplicateEntryNamesTheCoordinate) {
  const std::string text =
      R"({"v":1,"m":1,"n":2,"sense":"le","entries":[[0,1,"2"],[0,1,"3"]],"b":["1"],)"
      R"("lower":["0","0"],"upper":["inf","inf"],"integral":[true,true],"objective":null})";
  try {
    import_program(text, ProgramFormat::CanonicalJson);
    FAIL() << "expected invariant error";
  } catch (const InvariantError& e) {
    EXPECT_NE(std::string(e.what()).find("(0,1)"), std::string::npos) << e.what();
  }
}

TEST(ProgramIo, BoundInversionIsInvariantError) {
  auto p = program_from_rows({{1}}, {1}, Sense::LessEq, 1);
  p.lower[0] = 3;
  p.upper[0] = BigInt(1);
  EXPECT_THROW(p.validate(), InvariantError);
}

TEST(IntegerProgram, FormPredicates) {
  auto p = program_from_rows({{1, 1}}, {1}, Sense::LessEq, 2);
  EXPECT_TRUE(p.is_standard_without_upper_bounds());
  EXPECT_FALSE(p.is_binary());
  p.upper = {BigInt(1), BigInt(1)};
  EXPECT_TRUE(p.is_binary());
  EXPECT_FALSE(p.is_standard_without_upper_bounds());
  p.integral[1] = false;
  EXPECT_FALSE(p.all_integral());
  EXPECT_EQ(p.integral_count(), 1u);
}

}  // namespace
}  // namespace compact_ilp
