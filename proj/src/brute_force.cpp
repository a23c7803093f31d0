#include <algorithm>

#include "compact_ilp/errors.hpp"
#include "compact_ilp/scalar.hpp"
#include "compact_ilp/solve.hpp"

namespace compact_ilp {

namespace {

/// Depth-first enumeration of the box with exact interval pruning: a partial
/// assignment is abandoned only if some row cannot be met by any completion.
template <typename Scalar>
class BoxSearch {
 public:
  BoxSearch(const IntegerProgram& p, const std::vector<BigInt>& lo, const std::vector<BigInt>& hi)
      : m_(p.num_constraints), n_(p.num_vars), eq_(p.sense == Sense::Eq) {
    a_.assign(m_, std::vector<Scalar>(n_, Scalar(0)));
    for (const auto& e : p.entries) a_[e.row][e.col] = scalar_cast<Scalar>(e.coef);
    for (const auto& v : p.rhs) residual_.push_back(scalar_cast<Scalar>(v));
    for (std::size_t j = 0; j < n_; ++j) {
      lo_.push_back(scalar_cast<Scalar>(lo[j]));
      hi_.push_back(scalar_cast<Scalar>(hi[j]));
    }
    suffix_min_.assign(m_, std::vector<Scalar>(n_ + 1, Scalar(0)));
    suffix_max_.assign(m_, std::vector<Scalar>(n_ + 1, Scalar(0)));
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = n_; j-- > 0;) {
        const Scalar u = a_[i][j] * lo_[j];
        const Scalar v = a_[i][j] * hi_[j];
        suffix_min_[i][j] = suffix_min_[i][j + 1] + std::min(u, v);
        suffix_max_[i][j] = suffix_max_[i][j + 1] + std::max(u, v);
      }
    }
    x_.assign(n_, Scalar(0));
  }

  bool run() {
    if (!viable(0)) return false;
    return dfs(0);
  }

  std::vector<Rational> solution() const {
    std::vector<Rational> out;
    for (const auto& v : x_) out.emplace_back(to_bigint(v));
    return out;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  bool viable(std::size_t depth) const {
    for (std::size_t i = 0; i < m_; ++i) {
      if (residual_[i] < suffix_min_[i][depth]) return false;
      if (eq_ && residual_[i] > suffix_max_[i][depth]) return false;
    }
    return true;
  }

  bool dfs(std::size_t depth) {
    ++nodes_;
    if (depth == n_) return true;  // viable(n) already checked every row
    if (depth + 1 == n_) return solve_last(depth);
    for (Scalar v = lo_[depth]; v <= hi_[depth]; v += 1) {
      x_[depth] = v;
      for (std::size_t i = 0; i < m_; ++i) residual_[i] -= a_[i][depth] * v;
      const bool ok = viable(depth + 1) && dfs(depth + 1);
      for (std::size_t i = 0; i < m_; ++i) residual_[i] += a_[i][depth] * v;
      if (ok) return true;
    }
    return false;
  }

  // The last coordinate is read off row by row instead of being enumerated.
  bool solve_last(std::size_t j) {
    Scalar lo = lo_[j];
    Scalar hi = hi_[j];
    std::optional<Scalar> fixed;
    for (std::size_t i = 0; i < m_ && lo <= hi; ++i) {
      const Scalar& a = a_[i][j];
      const Scalar& r = residual_[i];
      if (a == 0) {
        if (eq_ ? r != 0 : r < 0) return false;
        continue;
      }
      if (eq_) {
        if (r % a != 0) return false;
        const Scalar v = r / a;
        if (fixed && *fixed != v) return false;
        fixed = v;
      } else if (a > 0) {
        hi = std::min(hi, floor_div(r, a));
      } else {
        lo = std::max(lo, ceil_div(r, a));
      }
    }
    if (fixed) {
      if (*fixed < lo || *fixed > hi) return false;
      x_[j] = *fixed;
      return true;
    }
    if (lo > hi) return false;
    x_[j] = lo;
    return true;
  }

  std::size_t m_;
  std::size_t n_;
  bool eq_;
  std::vector<std::vector<Scalar>> a_;
  std::vector<Scalar> residual_;
  std::vector<Scalar> lo_;
  std::vector<Scalar> hi_;
  std::vector<std::vector<Scalar>> suffix_min_;
  std::vector<std::vector<Scalar>> suffix_max_;
  std::vector<Scalar> x_;
  std::uint64_t nodes_ = 0;
};

template <typename Scalar>
SolveResult search_box(const IntegerProgram& p, const std::vector<BigInt>& lo, const std::vector<BigInt>& hi) {
  BoxSearch<Scalar> search(p, lo, hi);
  SolveResult result;
  if (search.run()) {
    result.status = SolveStatus::Feasible;
    result.certificate = search.solution();
  } else {
    result.status = SolveStatus::Infeasible;
  }
  result.stats.nodes = search.nodes();
  return result;
}

}  // namespace

SolveResult brute_force_feasibility(const IntegerProgram& p, const BigInt& cap, const BruteForceOptions& options) {
  return brute_force_feasibility(p, std::vector<BigInt>(p.num_vars, cap), options);
}

SolveResult brute_force_feasibility(const IntegerProgram& p, const std::vector<BigInt>& caps,
                                    const BruteForceOptions& options) {
  if (caps.size() != p.num_vars) throw UsageError("brute_force_feasibility: one cap per variable required");
  std::vector<BigInt> lo = p.lower;
  std::vector<BigInt> hi(p.num_vars);
  BigInt points = 1;
  for (std::size_t j = 0; j < p.num_vars; ++j) {
    hi[j] = p.upper[j] ? std::min(*p.upper[j], caps[j]) : caps[j];
    if (hi[j] < lo[j]) return SolveResult{SolveStatus::Infeasible, std::nullopt, {}};
    points *= hi[j] - lo[j] + 1;
    if (points > options.enumeration_budget)
      throw BudgetError("brute force box holds more than " + options.enumeration_budget.str() + " points");
  }
  // Largest magnitude any partial row sum can reach decides the working type.
  BigInt reach = 0;
  std::vector<BigInt> row_reach(p.num_constraints, BigInt(0));
  for (std::size_t i = 0; i < p.num_constraints; ++i) row_reach[i] = abs_value(p.rhs[i]);
  for (const auto& e : p.entries)
    row_reach[e.row] += abs_value(e.coef) * std::max(abs_value(lo[e.col]), abs_value(hi[e.col]));
  for (const auto& r : row_reach) reach = std::max(reach, r);
  for (std::size_t j = 0; j < p.num_vars; ++j) reach = std::max(reach, abs_value(hi[j]) + 1);
  if (fits_machine_word(reach)) return search_box<std::int64_t>(p, lo, hi);
  return search_box<BigInt>(p, lo, hi);
}

}  // namespace compact_ilp
