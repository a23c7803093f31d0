#pragma once

#include <optional>
#include <vector>

#include "compact_ilp/integer_program.hpp"

namespace compact_ilp {

enum class LpStatus { Vertex, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> x;  // basic feasible solution when status == Vertex
  std::uint64_t pivots = 0;
};

/// Exact simplex on { A x = b, x >= 0 } with Bland's rule.
///
/// Phase one finds a basic feasible solution; when `objective` is given a
/// second phase minimizes it. Runs on checked 64-bit fractions and restarts on
/// arbitrary-precision rationals if any intermediate overflows.
LpResult simplex_vertex(const std::vector<std::vector<BigInt>>& a, const std::vector<BigInt>& b,
                        std::size_t num_vars,
                        const std::optional<std::vector<BigInt>>& objective = std::nullopt);

/// LP relaxation of an equality-form program: lower bounds must be zero and
/// upper bounds absent. The program's objective, if any, is minimized.
LpResult lp_vertex_relaxation(const IntegerProgram& p);

}  // namespace compact_ilp
