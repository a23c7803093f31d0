#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "compact_ilp/integer_program.hpp"
#include "compact_ilp/simplex.hpp"

namespace compact_ilp {

enum class SolveStatus { Feasible, Infeasible, BoundExhausted };

std::string to_string(SolveStatus s);

struct SolveStats {
  std::uint64_t nodes = 0;
  BigInt max_residual_norm = 0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  /// Present iff Feasible. Integral entries for ILP engines; the MILP engine
  /// may return fractional values on continuous variables.
  std::optional<std::vector<Rational>> certificate;
  SolveStats stats;

  bool feasible() const { return status == SolveStatus::Feasible; }
  /// Certificate as integers; throws UsageError if any entry is fractional.
  std::vector<BigInt> integer_certificate() const;
};

struct SearchRadius {
  enum class Source { PaperBound, UserOverride };
  BigInt l1_cap;
  Source source = Source::PaperBound;
};

/// (2 m delta)^(2m) * (b_inf + 1): an explicit instance of the
/// O(m delta)^m (||b||_inf + 1) solution-norm bound.
SearchRadius radius_from_bounds(std::size_t m, const BigInt& delta, const BigInt& b_inf);

/// 4 m (ceil(log2(m+1)) + ceil(log2(delta+1)) + 1): an explicit instance of
/// the O(m (log m + log delta)) support bound.
std::size_t support_bound(std::size_t m, const BigInt& delta);

struct BruteForceOptions {
  /// Maximum number of points in the search box.
  BigInt enumeration_budget = 10'000'000;
};

/// Exhaustive search over lower_j <= x_j <= min(upper_j, cap_j).
/// Infeasible means "no solution inside the box". Throws BudgetError when the
/// box holds more points than the budget.
SolveResult brute_force_feasibility(const IntegerProgram& p, const std::vector<BigInt>& caps,
                                    const BruteForceOptions& options = {});
SolveResult brute_force_feasibility(const IntegerProgram& p, const BigInt& cap,
                                    const BruteForceOptions& options = {});

struct LatticeOptions {
  std::optional<BigInt> l1_cap;            // defaults to the PaperBound radius
  std::uint64_t node_cap = 20'000'000;     // distinct residuals kept in memory
};

/// Breadth-first reachability over residuals b - A x for an equality-form
/// program with non-negative unbounded integral variables.
///
/// A residual is kept only while ||r||_inf <= delta * l1_cap + ||b||_inf and r
/// lies within l_inf distance 2 m delta of the segment [0, b]; by the Steinitz
/// lemma some ordering of every solution's columns stays inside that tube, so
/// the restriction loses no solution of l1 norm <= l1_cap. The returned
/// certificate has minimum l1 norm.
SolveResult lattice_feasibility(const IntegerProgram& p, const LatticeOptions& options = {});

struct RhsReduction {
  bool lp_infeasible = false;
  IntegerProgram program;        // same A, rhs replaced by b' = b - A z
  std::vector<BigInt> shift;     // z_j = max(0, ceil(x*_j) - m(2m*delta+1)^m), x* an LP vertex
  BigInt reported_bound;         // (m * max(delta, 1))^(m+1)
  bool exceeds_bound = false;    // warning only
};

/// Proximity step: x' solves (A, b') exactly when x' + z solves (A, b), and
/// (A, b') is feasible exactly when (A, b) is.
RhsReduction reduce_rhs(const IntegerProgram& p);

struct MilpOptions {
  BigInt enumeration_budget = 10'000'000;
};

/// Enumerates the integral variables inside their (finite) bounds and decides
/// the remaining rational system exactly with the simplex method.
SolveResult milp_feasibility(const IntegerProgram& p, const MilpOptions& options = {});

}  // namespace compact_ilp
