#include "compact_ilp/solve.hpp"

#include <algorithm>

#include "compact_ilp/errors.hpp"

namespace compact_ilp {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Feasible:
      return "Feasible";
    case SolveStatus::Infeasible:
      return "Infeasible";
    case SolveStatus::BoundExhausted:
      return "BoundExhausted";
  }
  return "Unknown";
}

std::vector<BigInt> SolveResult::integer_certificate() const {
  if (!certificate) throw UsageError("no certificate: status is " + to_string(status));
  std::vector<BigInt> out;
  out.reserve(certificate->size());
  for (std::size_t j = 0; j < certificate->size(); ++j) {
    const Rational& v = (*certificate)[j];
    if (denominator(v) != 1) throw UsageError("certificate entry " + std::to_string(j) + " is fractional");
    out.push_back(numerator(v));
  }
  return out;
}

RhsReduction reduce_rhs(const IntegerProgram& p) {
  if (p.sense != Sense::Eq) throw UsageError("reduce_rhs: program must be in equality form");
  for (std::size_t j = 0; j < p.num_vars; ++j) {
    if (p.lower[j] != 0 || p.upper[j])
      throw UsageError("reduce_rhs: variable " + std::to_string(j) + " must have bounds [0, +inf)");
  }
  RhsReduction out;
  out.program = p;
  const std::size_t m = p.num_constraints;
  const DeltaStats ds = compute_delta(p);
  out.reported_bound = boost::multiprecision::pow(BigInt(m) * std::max(ds.delta_a, BigInt(1)),
                                                  static_cast<unsigned>(m + 1));
  const LpResult lp = simplex_vertex(p.dense(), p.rhs, p.num_vars, std::nullopt);
  if (lp.status != LpStatus::Vertex) {
    out.lp_infeasible = true;
    out.shift.assign(p.num_vars, BigInt(0));
    return out;
  }
  // Some integer solution lies within l1 distance m(2m*delta+1)^m of the vertex.
  const BigInt delta = std::max(ds.delta_a, BigInt(1));
  const BigInt reach = BigInt(m) * boost::multiprecision::pow(2 * BigInt(m) * delta + 1, static_cast<unsigned>(m));
  out.shift.reserve(p.num_vars);
  for (const auto& v : lp.x) out.shift.push_back(std::max(BigInt(0), BigInt(-floor_div(-v) - reach)));
  for (const auto& e : p.entries) out.program.rhs[e.row] -= e.coef * out.shift[e.col];
  BigInt norm = 0;
  for (const auto& v : out.program.rhs) norm = std::max(norm, abs_value(v));
  out.exceeds_bound = norm > out.reported_bound;
  return out;
}

namespace {

/// Decides the rational system left after fixing the integral variables.
/// Returns continuous values (indexed like `continuous`) or nullopt.
std::optional<std::vector<Rational>> solve_continuous(const IntegerProgram& p,
                                                      const std::vector<std::size_t>& continuous,
                                                      const std::vector<std::size_t>& position,
                                                      const std::vector<BigInt>& residual) {
  const std::size_t m = p.num_constraints;
  const std::size_t nc = continuous.size();
  const bool le = p.sense == Sense::LessEq;
  std::vector<std::size_t> bounded;
  for (std::size_t c = 0; c < nc; ++c)
    if (p.upper[continuous[c]]) bounded.push_back(c);
  const std::size_t rows = m + bounded.size();
  const std::size_t cols = nc + (le ? m : 0) + bounded.size();
  std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols, BigInt(0)));
  std::vector<BigInt> b(rows);
  // Work in y' = y - lower so every variable is non-negative.
  for (std::size_t i = 0; i < m; ++i) b[i] = residual[i];
  for (const auto& e : p.entries) {
    const std::size_t c = position[e.col];
    if (c == static_cast<std::size_t>(-1)) continue;
    a[e.row][c] = e.coef;
    b[e.row] -= e.coef * p.lower[e.col];
  }
  if (le)
    for (std::size_t i = 0; i < m; ++i) a[i][nc + i] = 1;
  for (std::size_t t = 0; t < bounded.size(); ++t) {
    const std::size_t c = bounded[t];
    const std::size_t row = m + t;
    a[row][c] = 1;
    a[row][nc + (le ? m : 0) + t] = 1;
    b[row] = *p.upper[continuous[c]] - p.lower[continuous[c]];
  }
  const LpResult lp = simplex_vertex(a, b, cols, std::nullopt);
  if (lp.status != LpStatus::Vertex) return std::nullopt;
  std::vector<Rational> y(nc);
  for (std::size_t c = 0; c < nc; ++c) y[c] = lp.x[c] + Rational(p.lower[continuous[c]]);
  return y;
}

}  // namespace

SolveResult milp_feasibility(const IntegerProgram& p, const MilpOptions& options) {
  const std::size_t n = p.num_vars;
  const std::size_t m = p.num_constraints;
  std::vector<std::size_t> integral;
  std::vector<std::size_t> continuous;
  std::vector<std::size_t> position(n, static_cast<std::size_t>(-1));
  BigInt points = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (p.integral[j]) {
      if (!p.upper[j])
        throw UsageError("milp_feasibility: integral variable " + std::to_string(j) + " needs a finite upper bound");
      integral.push_back(j);
      points *= *p.upper[j] - p.lower[j] + 1;
      if (points > options.enumeration_budget)
        throw BudgetError("MILP integral box holds more than " + options.enumeration_budget.str() + " points");
    } else {
      position[j] = continuous.size();
      continuous.push_back(j);
    }
  }
  const auto dense = p.dense();
  std::vector<bool> row_has_continuous(m, false);
  for (const auto& e : p.entries)
    if (!p.integral[e.col]) row_has_continuous[e.row] = true;

  SolveResult result;
  std::vector<BigInt> x(n, BigInt(0));
  for (auto j : integral) x[j] = p.lower[j];
  std::vector<BigInt> residual(m);
  for (;;) {
    ++result.stats.nodes;
    for (std::size_t i = 0; i < m; ++i) {
      residual[i] = p.rhs[i];
      for (auto j : integral)
        if (dense[i][j] != 0) residual[i] -= dense[i][j] * x[j];
    }
    bool viable = true;
    for (std::size_t i = 0; i < m && viable; ++i) {
      if (row_has_continuous[i]) continue;
      viable = p.sense == Sense::Eq ? residual[i] == 0 : residual[i] >= 0;
    }
    if (viable) {
      std::optional<std::vector<Rational>> y;
      if (continuous.empty()) {
        y = std::vector<Rational>{};
      } else {
        y = solve_continuous(p, continuous, position, residual);
      }
      if (y) {
        std::vector<Rational> cert(n);
        for (auto j : integral) cert[j] = Rational(x[j]);
        for (std::size_t c = 0; c < continuous.size(); ++c) cert[continuous[c]] = (*y)[c];
        result.status = SolveStatus::Feasible;
        result.certificate = std::move(cert);
        return result;
      }
    }
    // Odometer step over the integral box.
    std::size_t k = 0;
    for (; k < integral.size(); ++k) {
      const std::size_t j = integral[k];
      if (x[j] < *p.upper[j]) {
        x[j] += 1;
        break;
      }
      x[j] = p.lower[j];
    }
    if (k == integral.size()) break;
  }
  result.status = SolveStatus::Infeasible;
  return result;
}

}  // namespace compact_ilp
