#include <deque>
#include <unordered_map>

#include "compact_ilp/errors.hpp"
#include "compact_ilp/scalar.hpp"
#include "compact_ilp/solve.hpp"

namespace compact_ilp {

SearchRadius radius_from_bounds(std::size_t m, const BigInt& delta, const BigInt& b_inf) {
  if (m < 1 || delta < 1) throw UsageError("radius_from_bounds: requires m >= 1 and delta >= 1");
  const BigInt base = BigInt(2) * m * delta;
  return {boost::multiprecision::pow(base, static_cast<unsigned>(2 * m)) * (b_inf + 1),
          SearchRadius::Source::PaperBound};
}

std::size_t support_bound(std::size_t m, const BigInt& delta) {
  if (m < 1 || delta < 1) throw UsageError("support_bound: requires m >= 1 and delta >= 1");
  unsigned log_delta = 0;
  while ((BigInt(1) << log_delta) < delta + 1) ++log_delta;
  return 4 * m * (ceil_log2(m + 1) + log_delta + 1);
}

namespace {

template <typename Scalar>
class ResidualSearch {
 public:
  ResidualSearch(const IntegerProgram& p, const BigInt& delta, const BigInt& b_inf, const BigInt& cap,
                 std::uint64_t node_cap)
      : m_(p.num_constraints), node_cap_(node_cap) {
    const auto dense = p.dense();
    for (std::size_t j = 0; j < p.num_vars; ++j) {
      std::vector<Scalar> col(m_);
      bool nonzero = false;
      for (std::size_t i = 0; i < m_; ++i) {
        col[i] = scalar_cast<Scalar>(dense[i][j]);
        nonzero = nonzero || dense[i][j] != 0;
      }
      if (nonzero) {
        columns_.push_back(std::move(col));
        column_ids_.push_back(j);
      }
    }
    num_vars_ = p.num_vars;
    for (const auto& v : p.rhs) b_.push_back(scalar_cast<Scalar>(v));
    tube_ = scalar_cast<Scalar>(BigInt(2) * m_ * delta);
    const BigInt box = delta * cap + b_inf;
    // Residuals in the tube never exceed b_inf + tube + delta, so a larger box is moot.
    box_active_ = box < b_inf + BigInt(2) * m_ * delta + delta;
    if (box_active_) box_ = scalar_cast<Scalar>(box);
    level_cap_ = cap > BigInt(std::numeric_limits<std::int64_t>::max())
                     ? std::numeric_limits<std::uint64_t>::max()
                     : static_cast<std::uint64_t>(cap);
  }

  SolveResult run() {
    SolveResult result;
    std::string key;
    push(b_, kNoParent, 0, 0);
    if (is_zero(0)) return finish(0);
    for (std::size_t head = 0; head < levels_.size(); ++head) {
      if (levels_[head] >= level_cap_) {
        truncated_ = true;
        continue;
      }
      std::vector<Scalar> next(m_);
      for (std::size_t c = 0; c < columns_.size(); ++c) {
        for (std::size_t i = 0; i < m_; ++i) next[i] = residual(head, i) - columns_[c][i];
        if (!in_region(next)) continue;
        key.clear();
        for (const auto& v : next) append_key(key, v);
        if (!seen_.try_emplace(key, levels_.size()).second) continue;
        push(next, head, c, levels_[head] + 1);
        if (is_zero(levels_.size() - 1)) return finish(levels_.size() - 1);
        if (levels_.size() > node_cap_) {
          result.status = SolveStatus::BoundExhausted;
          result.stats = stats();
          return result;
        }
      }
    }
    result.status = truncated_ ? SolveStatus::BoundExhausted : SolveStatus::Infeasible;
    result.stats = stats();
    return result;
  }

  bool truncated() const { return truncated_; }

 private:
  static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

  const Scalar& residual(std::size_t state, std::size_t i) const { return residuals_[state * m_ + i]; }

  bool is_zero(std::size_t state) const {
    for (std::size_t i = 0; i < m_; ++i)
      if (residual(state, i) != 0) return false;
    return true;
  }

  void push(const std::vector<Scalar>& r, std::size_t parent, std::size_t column, std::uint64_t level) {
    for (const auto& v : r) {
      residuals_.push_back(v);
      const Scalar mag = v < 0 ? Scalar(-v) : v;
      if (mag > max_norm_) max_norm_ = mag;
    }
    parents_.push_back(parent);
    via_.push_back(column);
    levels_.push_back(level);
  }

  // r is admissible iff it sits in the box and some lambda in [0, 1] has
  // ||r - lambda b||_inf <= tube.
  bool in_region(const std::vector<Scalar>& r) const {
    Scalar lo_num = 0, lo_den = 1, hi_num = 1, hi_den = 1;
    for (std::size_t i = 0; i < m_; ++i) {
      if (box_active_ && (r[i] > box_ || r[i] < -box_)) return false;
      const Scalar& b = b_[i];
      if (b == 0) {
        if (r[i] > tube_ || r[i] < -tube_) return false;
        continue;
      }
      const Scalar den = b < 0 ? Scalar(-b) : b;
      const Scalar low = b > 0 ? Scalar(r[i] - tube_) : Scalar(-(r[i] + tube_));
      const Scalar high = b > 0 ? Scalar(r[i] + tube_) : Scalar(-(r[i] - tube_));
      if (low * lo_den > lo_num * den) {
        lo_num = low;
        lo_den = den;
      }
      if (high * hi_den < hi_num * den) {
        hi_num = high;
        hi_den = den;
      }
      if (lo_num * hi_den > hi_num * lo_den) return false;
    }
    return true;
  }

  SolveStats stats() const {
    SolveStats s;
    s.nodes = levels_.size();
    s.max_residual_norm = to_bigint(max_norm_);
    return s;
  }

  SolveResult finish(std::size_t state) const {
    SolveResult result;
    result.status = SolveStatus::Feasible;
    std::vector<BigInt> x(num_vars_, BigInt(0));
    for (std::size_t s = state; parents_[s] != kNoParent; s = parents_[s]) x[column_ids_[via_[s]]] += 1;
    std::vector<Rational> cert;
    for (const auto& v : x) cert.emplace_back(v);
    result.certificate = std::move(cert);
    result.stats = stats();
    return result;
  }

  std::size_t m_;
  std::size_t num_vars_ = 0;
  std::uint64_t node_cap_;
  std::vector<std::vector<Scalar>> columns_;
  std::vector<std::size_t> column_ids_;
  std::vector<Scalar> b_;
  Scalar tube_{};
  bool box_active_ = false;
  Scalar box_{};
  std::uint64_t level_cap_ = 0;
  bool truncated_ = false;
  Scalar max_norm_{0};
  std::vector<Scalar> residuals_;
  std::vector<std::size_t> parents_;
  std::vector<std::size_t> via_;
  std::vector<std::uint64_t> levels_;
  std::unordered_map<std::string, std::size_t> seen_;
};

}  // namespace

SolveResult lattice_feasibility(const IntegerProgram& p, const LatticeOptions& options) {
  if (p.sense != Sense::Eq) throw UsageError("lattice_feasibility: program must be in equality form");
  for (std::size_t j = 0; j < p.num_vars; ++j) {
    if (!p.integral[j] || p.lower[j] != 0 || p.upper[j])
      throw UsageError("lattice_feasibility: variable " + std::to_string(j) +
                       " must be integral with bounds [0, +inf)");
  }
  if (p.num_constraints == 0) {
    SolveResult r;
    r.status = SolveStatus::Feasible;
    r.certificate = std::vector<Rational>(p.num_vars, Rational(0));
    return r;
  }
  const DeltaStats ds = compute_delta(p);
  const BigInt delta = std::max(ds.delta_a, BigInt(1));
  SearchRadius radius = radius_from_bounds(p.num_constraints, delta, ds.b_inf_norm);
  if (options.l1_cap) radius = {*options.l1_cap, SearchRadius::Source::UserOverride};
  if (radius.l1_cap < 0) throw UsageError("lattice_feasibility: l1 cap must be non-negative");

  const BigInt tube = BigInt(2) * p.num_constraints * delta;
  const BigInt reach = ds.b_inf_norm + 2 * tube + delta;
  SolveResult result;
  if (fits_machine_word(reach * (ds.b_inf_norm + 1) * 4)) {
    ResidualSearch<std::int64_t> search(p, delta, ds.b_inf_norm, radius.l1_cap, options.node_cap);
    result = search.run();
  } else {
    ResidualSearch<BigInt> search(p, delta, ds.b_inf_norm, radius.l1_cap, options.node_cap);
    result = search.run();
  }
  // Under the PaperBound cap a truncated search still proves infeasibility.
  if (result.status == SolveStatus::BoundExhausted && radius.source == SearchRadius::Source::PaperBound &&
      result.stats.nodes <= options.node_cap)
    result.status = SolveStatus::Infeasible;
  return result;
}

}  // namespace compact_ilp
