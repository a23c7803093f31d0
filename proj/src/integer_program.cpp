#include "compact_ilp/integer_program.hpp"

#include <algorithm>
#include <charconv>

#include "compact_ilp/errors.hpp"

namespace compact_ilp {

bool parse_bigint(std::string_view text, BigInt& out) {
  if (text.empty()) return false;
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) return false;
  BigInt value = 0;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  out = negative ? BigInt(-value) : value;
  return true;
}

bool parse_rational(std::string_view text, Rational& out) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num, den;
    if (!parse_bigint(text.substr(0, slash), num)) return false;
    const auto den_text = text.substr(slash + 1);
    if (den_text.empty() || den_text[0] == '-' || den_text[0] == '+') return false;
    if (!parse_bigint(den_text, den) || den == 0) return false;
    out = Rational(num, den);
    return true;
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto int_part = text.substr(0, dot);
    const auto frac_part = text.substr(dot + 1);
    if (frac_part.empty()) return false;
    for (char c : frac_part)
      if (c < '0' || c > '9') return false;
    BigInt whole;
    const bool negative = !int_part.empty() && int_part[0] == '-';
    if (int_part.empty() || int_part == "-" || int_part == "+") {
      whole = 0;
    } else if (!parse_bigint(int_part, whole)) {
      return false;
    }
    BigInt frac, scale = 1;
    parse_bigint(frac_part, frac);
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    Rational mag = Rational(abs_value(whole)) + Rational(frac, scale);
    out = negative ? Rational(-mag) : mag;
    return true;
  }
  BigInt v;
  if (!parse_bigint(text, v)) return false;
  out = Rational(v);
  return true;
}

IntegerProgram IntegerProgram::standard(std::size_t m, std::size_t n, Sense sense) {
  IntegerProgram p;
  p.num_constraints = m;
  p.num_vars = n;
  p.rhs.assign(m, BigInt(0));
  p.sense = sense;
  p.lower.assign(n, BigInt(0));
  p.upper.assign(n, std::nullopt);
  p.integral.assign(n, true);
  return p;
}

void IntegerProgram::add(std::size_t row, std::size_t col, const BigInt& coef) {
  for (auto& e : entries) {
    if (e.row == row && e.col == col) {
      e.coef += coef;
      return;
    }
  }
  entries.push_back({row, col, coef});
}

void IntegerProgram::canonicalize() {
  std::erase_if(entries, [](const Entry& e) { return e.coef == 0; });
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
}

void IntegerProgram::validate() const {
  if (rhs.size() != num_constraints)
    throw InvariantError("rhs has " + std::to_string(rhs.size()) + " entries, expected " +
                         std::to_string(num_constraints));
  if (lower.size() != num_vars || upper.size() != num_vars || integral.size() != num_vars)
    throw InvariantError("bound/integrality vectors must have length n = " +
                         std::to_string(num_vars));
  if (objective && objective->size() != num_vars)
    throw InvariantError("objective must have length n = " + std::to_string(num_vars));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (e.row >= num_constraints || e.col >= num_vars)
      throw InvariantError("entry (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                           ") out of range");
  }
  std::vector<std::pair<std::size_t, std::size_t>> coords;
  coords.reserve(entries.size());
  for (const auto& e : entries) coords.emplace_back(e.row, e.col);
  std::sort(coords.begin(), coords.end());
  for (std::size_t i = 1; i < coords.size(); ++i) {
    if (coords[i] == coords[i - 1])
      throw InvariantError("duplicate entry (" + std::to_string(coords[i].first) + "," +
                           std::to_string(coords[i].second) + ")");
  }
  for (std::size_t j = 0; j < num_vars; ++j) {
    if (upper[j] && *upper[j] < lower[j])
      throw InvariantError("bound inversion on variable " + std::to_string(j) + ": lower " +
                           lower[j].str() + " > upper " + upper[j]->str());
  }
}

bool IntegerProgram::is_standard_without_upper_bounds() const {
  for (std::size_t j = 0; j < num_vars; ++j)
    if (lower[j] != 0 || upper[j] || !integral[j]) return false;
  return true;
}

bool IntegerProgram::is_binary() const {
  for (std::size_t j = 0; j < num_vars; ++j)
    if (lower[j] != 0 || !upper[j] || *upper[j] != 1 || !integral[j]) return false;
  return true;
}

bool IntegerProgram::all_integral() const {
  return std::all_of(integral.begin(), integral.end(), [](bool b) { return b; });
}

bool IntegerProgram::has_finite_upper_bounds() const {
  return std::any_of(upper.begin(), upper.end(), [](const auto& u) { return u.has_value(); });
}

std::size_t IntegerProgram::integral_count() const {
  return static_cast<std::size_t>(std::count(integral.begin(), integral.end(), true));
}

std::vector<std::vector<BigInt>> IntegerProgram::dense() const {
  std::vector<std::vector<BigInt>> a(num_constraints, std::vector<BigInt>(num_vars, BigInt(0)));
  for (const auto& e : entries) a[e.row][e.col] = e.coef;
  return a;
}

DeltaStats compute_delta(const IntegerProgram& p) {
  DeltaStats s{0, 0};
  for (const auto& e : p.entries) s.delta_a = std::max(s.delta_a, abs_value(e.coef));
  for (const auto& v : p.rhs) s.b_inf_norm = std::max(s.b_inf_norm, abs_value(v));
  return s;
}

IntegerProgram to_equality_form(const IntegerProgram& p) {
  if (p.sense != Sense::LessEq) throw UsageError("to_equality_form: program is already in equality form");
  if (!p.is_standard_without_upper_bounds())
    throw UsageError("to_equality_form: requires standard form without upper bounds");
  const std::size_t m = p.num_constraints;
  const std::size_t n = p.num_vars;
  IntegerProgram q = IntegerProgram::standard(m, n + m, Sense::Eq);
  q.entries = p.entries;
  for (std::size_t i = 0; i < m; ++i) q.entries.push_back({i, n + i, BigInt(1)});
  q.rhs = p.rhs;
  if (p.objective) {
    auto obj = *p.objective;
    obj.resize(n + m, BigInt(0));
    q.objective = std::move(obj);
  }
  q.canonicalize();
  return q;
}

namespace {

template <typename Value>
bool satisfies_impl(const IntegerProgram& p, const std::vector<Value>& x) {
  if (x.size() != p.num_vars) return false;
  for (std::size_t j = 0; j < p.num_vars; ++j) {
    if (x[j] < Value(p.lower[j])) return false;
    if (p.upper[j] && x[j] > Value(*p.upper[j])) return false;
    if constexpr (std::is_same_v<Value, Rational>) {
      if (p.integral[j] && boost::multiprecision::denominator(x[j]) != 1) return false;
    }
  }
  std::vector<Value> lhs(p.num_constraints, Value(0));
  for (const auto& e : p.entries) lhs[e.row] += Value(e.coef) * x[e.col];
  for (std::size_t i = 0; i < p.num_constraints; ++i) {
    if (p.sense == Sense::Eq ? lhs[i] != Value(p.rhs[i]) : lhs[i] > Value(p.rhs[i])) return false;
  }
  return true;
}

}  // namespace

bool satisfies(const IntegerProgram& p, const std::vector<BigInt>& x) { return satisfies_impl(p, x); }
bool satisfies(const IntegerProgram& p, const std::vector<Rational>& x) { return satisfies_impl(p, x); }

}  // namespace compact_ilp
