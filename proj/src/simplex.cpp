#include "compact_ilp/simplex.hpp"

#include <cstdint>
#include <algorithm>
#include <limits>

#include "compact_ilp/errors.hpp"

namespace compact_ilp {

namespace {

struct Overflow {};

/// Reduced fraction over int64 that throws Overflow instead of wrapping.
class CheckedFraction {
 public:
  CheckedFraction() = default;
  CheckedFraction(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)

  static CheckedFraction from(const BigInt& v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < -std::numeric_limits<std::int64_t>::max())
      throw Overflow{};
    return CheckedFraction(static_cast<std::int64_t>(v));
  }

  Rational to_rational() const { return Rational(BigInt(num_), BigInt(den_)); }

  friend CheckedFraction operator+(const CheckedFraction& a, const CheckedFraction& b) {
    return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
  }
  friend CheckedFraction operator-(const CheckedFraction& a, const CheckedFraction& b) {
    return make(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
  }
  friend CheckedFraction operator*(const CheckedFraction& a, const CheckedFraction& b) {
    return make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend CheckedFraction operator/(const CheckedFraction& a, const CheckedFraction& b) {
    return make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }
  CheckedFraction operator-() const { return make(-static_cast<__int128>(num_), den_); }

  friend bool operator<(const CheckedFraction& a, const CheckedFraction& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const CheckedFraction& a, const CheckedFraction& b) { return b < a; }
  friend bool operator==(const CheckedFraction& a, const CheckedFraction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  bool is_zero() const { return num_ == 0; }

 private:
  static CheckedFraction make(__int128 n, __int128 d) {
    if (d == 0) throw Overflow{};
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();
    if (n > kMax || n < -kMax || d > kMax) throw Overflow{};
    CheckedFraction f;
    f.num_ = static_cast<std::int64_t>(n);
    f.den_ = static_cast<std::int64_t>(d);
    return f;
  }
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

template <typename Field>
Field field_from(const BigInt& v) {
  if constexpr (std::is_same_v<Field, CheckedFraction>) {
    return CheckedFraction::from(v);
  } else {
    return Field(v);
  }
}

template <typename Field>
Rational to_rational(const Field& v) {
  if constexpr (std::is_same_v<Field, CheckedFraction>) {
    return v.to_rational();
  } else {
    return v;
  }
}

template <typename Field>
bool is_zero(const Field& v) {
  if constexpr (std::is_same_v<Field, CheckedFraction>) {
    return v.is_zero();
  } else {
    return v == 0;
  }
}

template <typename Field>
class Tableau {
 public:
  Tableau(const std::vector<std::vector<BigInt>>& a, const std::vector<BigInt>& b, std::size_t n)
      : m_(b.size()), n_(n), width_(n_ + m_ + 1) {
    cells_.assign(m_ * width_, Field(0));
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const bool flip = b[i] < 0;
      for (std::size_t j = 0; j < n_; ++j) {
        if (a[i][j] != 0) at(i, j) = field_from<Field>(flip ? BigInt(-a[i][j]) : a[i][j]);
      }
      at(i, n_ + i) = Field(1);
      at(i, width_ - 1) = field_from<Field>(flip ? BigInt(-b[i]) : b[i]);
      basis_[i] = n_ + i;
    }
  }

  LpResult solve(const std::optional<std::vector<BigInt>>& objective) {
    LpResult result;
    std::vector<Field> cost(n_ + m_, Field(0));
    for (std::size_t i = 0; i < m_; ++i) cost[n_ + i] = Field(1);
    run_phase(cost, n_, result.pivots);
    Field infeasibility(0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= n_) infeasibility = infeasibility + rhs(i);
    if (!is_zero(infeasibility)) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    // Pivot zero-valued artificials out where a structural column allows it.
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (!is_zero(at(i, j))) {
          pivot(i, j);
          ++result.pivots;
          break;
        }
      }
    }
    if (objective) {
      std::vector<Field> c(n_ + m_, Field(0));
      for (std::size_t j = 0; j < n_; ++j) c[j] = field_from<Field>((*objective)[j]);
      if (!run_phase(c, n_, result.pivots)) {
        result.status = LpStatus::Unbounded;
        return result;
      }
    }
    result.status = LpStatus::Vertex;
    result.x.assign(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) result.x[basis_[i]] = to_rational(rhs(i));
    return result;
  }

 private:
  Field& at(std::size_t i, std::size_t j) { return cells_[i * width_ + j]; }
  const Field& rhs(std::size_t i) const { return cells_[i * width_ + width_ - 1]; }

  /// Minimizes cost over columns [0, allowed). Returns false when unbounded.
  bool run_phase(const std::vector<Field>& cost, std::size_t allowed, std::uint64_t& pivots) {
    std::vector<bool> in_basis(n_ + m_, false);
    for (;;) {
      std::fill(in_basis.begin(), in_basis.end(), false);
      for (auto c : basis_) in_basis[c] = true;
      std::size_t entering = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (in_basis[j]) continue;
        Field reduced = cost[j];
        for (std::size_t i = 0; i < m_; ++i) {
          const Field& t = at(i, j);
          if (!is_zero(t) && !is_zero(cost[basis_[i]])) reduced = reduced - cost[basis_[i]] * t;
        }
        if (reduced < Field(0)) {
          entering = j;
          break;
        }
      }
      if (entering == allowed) return true;
      std::size_t leaving = m_;
      Field best(0);
      for (std::size_t i = 0; i < m_; ++i) {
        const Field& t = at(i, entering);
        if (!(t > Field(0))) continue;
        Field ratio = rhs(i) / t;
        if (leaving == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leaving])) {
          leaving = i;
          best = ratio;
        }
      }
      if (leaving == m_) return false;
      pivot(leaving, entering);
      ++pivots;
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const Field inv = Field(1) / at(row, col);
    for (std::size_t j = 0; j < width_; ++j)
      if (!is_zero(at(row, j))) at(row, j) = at(row, j) * inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      const Field factor = at(i, col);
      if (is_zero(factor)) continue;
      for (std::size_t j = 0; j < width_; ++j) {
        if (!is_zero(at(row, j))) at(i, j) = at(i, j) - factor * at(row, j);
      }
    }
    basis_[row] = col;
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t width_;
  std::vector<Field> cells_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult simplex_vertex(const std::vector<std::vector<BigInt>>& a, const std::vector<BigInt>& b,
                        std::size_t num_vars, const std::optional<std::vector<BigInt>>& objective) {
  try {
    Tableau<CheckedFraction> fast(a, b, num_vars);
    return fast.solve(objective);
  } catch (const Overflow&) {
    Tableau<Rational> exact(a, b, num_vars);
    return exact.solve(objective);
  }
}

LpResult lp_vertex_relaxation(const IntegerProgram& p) {
  if (p.sense != Sense::Eq) throw UsageError("lp_vertex_relaxation: program must be in equality form");
  for (std::size_t j = 0; j < p.num_vars; ++j) {
    if (p.lower[j] != 0 || p.upper[j])
      throw UsageError("lp_vertex_relaxation: variable " + std::to_string(j) +
                       " must have bounds [0, +inf)");
  }
  return simplex_vertex(p.dense(), p.rhs, p.num_vars, p.objective);
}

}  // namespace compact_ilp
