#include "compact_ilp/program_io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "compact_ilp/errors.hpp"

namespace compact_ilp {

namespace {

using ordered_json = nlohmann::ordered_json;

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

// ---------------------------------------------------------------- JSON

std::string export_json(const IntegerProgram& p) {
  ordered_json j;
  j["v"] = 1;
  j["m"] = p.num_constraints;
  j["n"] = p.num_vars;
  j["sense"] = p.sense == Sense::Eq ? "eq" : "le";
  auto entries = ordered_json::array();
  for (const auto& e : p.entries) entries.push_back(ordered_json::array({e.row, e.col, e.coef.str()}));
  j["entries"] = std::move(entries);
  auto b = ordered_json::array();
  for (const auto& v : p.rhs) b.push_back(v.str());
  j["b"] = std::move(b);
  auto lower = ordered_json::array();
  for (const auto& v : p.lower) lower.push_back(v.str());
  j["lower"] = std::move(lower);
  auto upper = ordered_json::array();
  for (const auto& v : p.upper) upper.push_back(v ? v->str() : std::string("inf"));
  j["upper"] = std::move(upper);
  auto integral = ordered_json::array();
  for (bool f : p.integral) integral.push_back(f);
  j["integral"] = std::move(integral);
  if (p.objective) {
    auto obj = ordered_json::array();
    for (const auto& v : *p.objective) obj.push_back(v.str());
    j["objective"] = std::move(obj);
  } else {
    j["objective"] = nullptr;
  }
  return j.dump() + "\n";
}

BigInt json_bigint(const nlohmann::json& v, const std::string& where) {
  BigInt out;
  if (v.is_string()) {
    if (parse_bigint(v.get<std::string>(), out)) return out;
  } else if (v.is_number_integer()) {
    return BigInt(v.get<std::int64_t>());
  }
  throw ParseError(where + ": expected integer as decimal string");
}

std::size_t json_count(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw ParseError(where + ": expected non-negative integer");
  return v.get<std::size_t>();
}

const nlohmann::json& json_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

const nlohmann::json& json_array(const nlohmann::json& j, const char* key) {
  const auto& v = json_field(j, key);
  if (!v.is_array()) throw ParseError(std::string("field \"") + key + "\" must be an array");
  return v;
}

IntegerProgram import_json(std::string_view bytes) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(bytes.begin(), bytes.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = line_column(bytes, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(std::string("malformed JSON: ") + e.what(), line, column);
  }
  if (!j.is_object()) throw ParseError("program must be a JSON object");
  if (j.contains("v") && j["v"] != 1) throw ParseError("unsupported program version");
  IntegerProgram p;
  p.num_constraints = json_count(json_field(j, "m"), "m");
  p.num_vars = json_count(json_field(j, "n"), "n");
  const auto& sense = json_field(j, "sense");
  if (sense == "le") {
    p.sense = Sense::LessEq;
  } else if (sense == "eq") {
    p.sense = Sense::Eq;
  } else {
    throw ParseError("sense must be \"le\" or \"eq\"");
  }
  for (const auto& e : json_array(j, "entries")) {
    if (!e.is_array() || e.size() != 3) throw ParseError("entry must be [row, col, \"coef\"]");
    p.entries.push_back({json_count(e[0], "entry row"), json_count(e[1], "entry col"),
                         json_bigint(e[2], "entry coefficient")});
  }
  for (const auto& v : json_array(j, "b")) p.rhs.push_back(json_bigint(v, "b"));
  for (const auto& v : json_array(j, "lower")) p.lower.push_back(json_bigint(v, "lower"));
  for (const auto& v : json_array(j, "upper")) {
    if (v == "inf") {
      p.upper.emplace_back(std::nullopt);
    } else {
      p.upper.emplace_back(json_bigint(v, "upper"));
    }
  }
  for (const auto& v : json_array(j, "integral")) {
    if (!v.is_boolean()) throw ParseError("integral flags must be booleans");
    p.integral.push_back(v.get<bool>());
  }
  if (j.contains("objective") && !j["objective"].is_null()) {
    std::vector<BigInt> obj;
    for (const auto& v : json_array(j, "objective")) obj.push_back(json_bigint(v, "objective"));
    p.objective = std::move(obj);
  }
  p.validate();
  p.canonicalize();
  return p;
}

// ---------------------------------------------------------------- shared text helpers

std::string var_name(std::size_t j) { return "x" + std::to_string(j); }
std::string row_name(std::size_t i) { return "c" + std::to_string(i); }

std::string lower_case(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

/// Maps variable names to column indices. Names of the form x<digits> map to
/// their own index so that exported programs come back column-for-column.
class NameTable {
 public:
  std::size_t index(const std::string& name) {
    auto [it, inserted] = ids_.try_emplace(name, order_.size());
    if (inserted) order_.push_back(name);
    return it->second;
  }
  std::size_t size() const { return order_.size(); }

  /// Returns old id -> final column index, plus the column count.
  std::pair<std::vector<std::size_t>, std::size_t> finalize() const {
    std::vector<std::size_t> map(order_.size());
    bool indexed = true;
    std::size_t max_index = 0;
    std::vector<std::size_t> parsed(order_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) {
      const auto& name = order_[i];
      if (name.size() < 2 || name[0] != 'x' ||
          !std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
          name.size() > 12) {
        indexed = false;
        break;
      }
      parsed[i] = std::stoull(name.substr(1));
      max_index = std::max(max_index, parsed[i]);
    }
    if (indexed && !order_.empty()) return {parsed, max_index + 1};
    for (std::size_t i = 0; i < order_.size(); ++i) map[i] = i;
    return {map, order_.size()};
  }

 private:
  std::unordered_map<std::string, std::size_t> ids_;
  std::vector<std::string> order_;
};

struct RawRow {
  std::vector<std::pair<std::size_t, BigInt>> terms;  // (name id, coef)
  char op = 'L';                                      // L, G, E
  BigInt rhs;
};

struct RawBounds {
  std::optional<BigInt> lower;
  bool lower_set = false;
  std::optional<BigInt> upper;
  bool upper_set = false;
  bool lower_minus_inf = false;
};

IntegerProgram assemble(const NameTable& names, const std::vector<RawRow>& rows,
                        const std::map<std::size_t, BigInt>& objective, bool has_objective,
                        const std::map<std::size_t, RawBounds>& bounds,
                        const std::vector<std::size_t>& integral_ids) {
  const auto [col_of, n] = names.finalize();
  bool any_eq = false, any_ineq = false;
  for (const auto& r : rows) (r.op == 'E' ? any_eq : any_ineq) = true;
  if (any_eq && any_ineq)
    throw ParseError("mixed equality and inequality rows cannot share one sense");
  IntegerProgram p = IntegerProgram::standard(rows.size(), n, any_eq ? Sense::Eq : Sense::LessEq);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const bool negate = rows[i].op == 'G';
    for (const auto& [id, coef] : rows[i].terms) {
      p.entries.push_back({i, col_of[id], negate ? BigInt(-coef) : coef});
    }
    p.rhs[i] = negate ? BigInt(-rows[i].rhs) : rows[i].rhs;
  }
  // Repeated terms inside a row are summed before validation.
  std::map<std::pair<std::size_t, std::size_t>, BigInt> merged;
  for (const auto& e : p.entries) merged[{e.row, e.col}] += e.coef;
  p.entries.clear();
  for (const auto& [rc, coef] : merged) p.entries.push_back({rc.first, rc.second, coef});
  for (std::size_t j = 0; j < n; ++j) p.integral[j] = false;
  for (auto id : integral_ids) p.integral[col_of[id]] = true;
  for (const auto& [id, b] : bounds) {
    const auto col = col_of[id];
    if (b.lower_minus_inf)
      throw ParseError("variable " + var_name(col) + ": unbounded-below variables are not supported");
    if (b.lower_set) p.lower[col] = *b.lower;
    if (b.upper_set) p.upper[col] = b.upper;
  }
  if (has_objective) {
    std::vector<BigInt> obj(n, BigInt(0));
    for (const auto& [id, c] : objective) obj[col_of[id]] += c;
    p.objective = std::move(obj);
  }
  p.validate();
  p.canonicalize();
  return p;
}

// ---------------------------------------------------------------- LP text

void append_terms(std::ostringstream& out, const std::vector<std::pair<std::size_t, BigInt>>& terms) {
  bool first = true;
  for (const auto& [col, coef] : terms) {
    if (first) {
      out << coef.str() << ' ' << var_name(col);
      first = false;
    } else if (coef < 0) {
      out << " - " << BigInt(-coef).str() << ' ' << var_name(col);
    } else {
      out << " + " << coef.str() << ' ' << var_name(col);
    }
  }
  if (first) out << '0';
}

std::string export_lp(const IntegerProgram& p) {
  std::ostringstream out;
  out << "\\ compact_ilp export: m=" << p.num_constraints << " n=" << p.num_vars << "\n";
  out << "Minimize\n obj: ";
  std::vector<std::pair<std::size_t, BigInt>> obj;
  if (p.objective) {
    for (std::size_t j = 0; j < p.num_vars; ++j)
      if ((*p.objective)[j] != 0) obj.emplace_back(j, (*p.objective)[j]);
  }
  if (obj.empty() && p.num_vars > 0) obj.emplace_back(0, BigInt(0));
  append_terms(out, obj);
  out << "\nSubject To\n";
  std::vector<std::vector<std::pair<std::size_t, BigInt>>> rows(p.num_constraints);
  for (const auto& e : p.entries) rows[e.row].emplace_back(e.col, e.coef);
  for (std::size_t i = 0; i < p.num_constraints; ++i) {
    out << ' ' << row_name(i) << ": ";
    if (rows[i].empty() && p.num_vars > 0) rows[i].emplace_back(0, BigInt(0));
    append_terms(out, rows[i]);
    out << (p.sense == Sense::Eq ? " = " : " <= ") << p.rhs[i].str() << "\n";
  }
  out << "Bounds\n";
  for (std::size_t j = 0; j < p.num_vars; ++j) {
    if (p.upper[j]) {
      out << ' ' << p.lower[j].str() << " <= " << var_name(j) << " <= " << p.upper[j]->str() << "\n";
    } else {
      out << ' ' << var_name(j) << " >= " << p.lower[j].str() << "\n";
    }
  }
  std::vector<std::size_t> ints;
  for (std::size_t j = 0; j < p.num_vars; ++j)
    if (p.integral[j]) ints.push_back(j);
  if (!ints.empty()) {
    out << "General\n";
    for (auto j : ints) out << ' ' << var_name(j) << "\n";
  }
  out << "End\n";
  return out.str();
}

bool is_number_token(const std::string& t) {
  BigInt v;
  return parse_bigint(t, v);
}

bool is_operator(const std::string& t) {
  return t == "<=" || t == ">=" || t == "=" || t == "<" || t == ">" || t == "=<" || t == "=>";
}

char op_code(const std::string& t) {
  if (t == "<=" || t == "<" || t == "=<") return 'L';
  if (t == ">=" || t == ">" || t == "=>") return 'G';
  return 'E';
}

BigInt lp_number(const std::string& t, std::size_t line) {
  BigInt v;
  if (!parse_bigint(t, v)) throw ParseError("expected integer, got '" + t + "'", line, 1);
  return v;
}

/// Parses "[sign] [coef] name" sequences from tokens[begin, end).
std::vector<std::pair<std::string, BigInt>> parse_linear(const std::vector<std::string>& toks,
                                                         std::size_t begin, std::size_t end,
                                                         std::size_t line, BigInt& constant) {
  std::vector<std::pair<std::string, BigInt>> terms;
  BigInt sign = 1;
  std::optional<BigInt> coef;
  for (std::size_t i = begin; i < end; ++i) {
    const auto& t = toks[i];
    if (t == "+") continue;
    if (t == "-") {
      sign = -sign;
      continue;
    }
    if (is_number_token(t)) {
      coef = lp_number(t, line);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(t[0])) || t[0] == '_') {
      terms.emplace_back(t, sign * (coef ? *coef : BigInt(1)));
      sign = 1;
      coef.reset();
      continue;
    }
    throw ParseError("unexpected token '" + t + "'", line, 1);
  }
  if (coef) constant += sign * *coef;
  return terms;
}

IntegerProgram import_lp(std::string_view bytes) {
  enum class Section { None, Objective, Constraints, Bounds, General, Binary, End };
  Section section = Section::None;
  NameTable names;
  std::vector<RawRow> rows;
  std::map<std::size_t, BigInt> objective;
  bool has_objective = false;
  bool objective_max = false;
  std::map<std::size_t, RawBounds> bounds;
  std::vector<std::size_t> integral_ids;
  std::vector<std::string> pending;  // constraint tokens spanning lines
  std::size_t pending_line = 0;

  auto flush_constraint = [&](std::size_t line) {
    auto toks = pending;
    pending.clear();
    std::size_t start = 0;
    if (!toks.empty() && toks[0].back() == ':') start = 1;
    std::size_t op = toks.size();
    for (std::size_t i = start; i < toks.size(); ++i)
      if (is_operator(toks[i])) {
        op = i;
        break;
      }
    if (op + 2 != toks.size()) throw ParseError("constraint must end with '<op> <integer>'", line, 1);
    BigInt constant = 0;
    RawRow row;
    for (auto& [name, c] : parse_linear(toks, start, op, line, constant))
      row.terms.emplace_back(names.index(name), c);
    row.op = op_code(toks[op]);
    row.rhs = lp_number(toks[op + 1], line) - constant;
    rows.push_back(std::move(row));
  };

  std::istringstream in{std::string(bytes)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto c = raw.find('\\'); c != std::string::npos) raw.resize(c);
    auto toks = split_ws(raw);
    if (toks.empty()) continue;
    const std::string head = lower_case(toks[0]);
    std::string head2 = toks.size() > 1 ? lower_case(toks[0] + " " + toks[1]) : head;
    Section next = section;
    bool header = true;
    if (head == "minimize" || head == "minimise" || head == "min") {
      next = Section::Objective;
    } else if (head == "maximize" || head == "maximise" || head == "max") {
      next = Section::Objective;
      objective_max = true;
    } else if (head2 == "subject to" || head2 == "such that" || head == "st" || head == "s.t.") {
      next = Section::Constraints;
    } else if (head == "bounds" || head == "bound") {
      next = Section::Bounds;
    } else if (head == "general" || head == "generals" || head == "gen" || head == "integer" ||
               head == "integers") {
      next = Section::General;
    } else if (head == "binary" || head == "binaries" || head == "bin") {
      next = Section::Binary;
    } else if (head == "end") {
      next = Section::End;
    } else {
      header = false;
    }
    if (header) {
      if (!pending.empty()) flush_constraint(pending_line);
      section = next;
      continue;
    }
    switch (section) {
      case Section::None:
        throw ParseError("content before any section header", line_no, 1);
      case Section::End:
        throw ParseError("content after End", line_no, 1);
      case Section::Objective: {
        has_objective = true;
        std::size_t start = (!toks.empty() && toks[0].back() == ':') ? 1 : 0;
        BigInt constant = 0;
        for (auto& [name, c] : parse_linear(toks, start, toks.size(), line_no, constant))
          objective[names.index(name)] += objective_max ? BigInt(-c) : c;
        break;
      }
      case Section::Constraints: {
        if (pending.empty()) pending_line = line_no;
        for (auto& t : toks) pending.push_back(t);
        bool has_op = false;
        for (std::size_t i = 0; i < pending.size(); ++i)
          if (is_operator(pending[i]) && i + 1 < pending.size()) has_op = true;
        if (has_op) flush_constraint(pending_line);
        break;
      }
      case Section::Bounds: {
        auto bound_value = [&](const std::string& t, bool& minus_inf, bool& plus_inf) -> BigInt {
          const auto lt = lower_case(t);
          minus_inf = lt == "-inf" || lt == "-infinity";
          plus_inf = lt == "+inf" || lt == "inf" || lt == "+infinity" || lt == "infinity";
          if (minus_inf || plus_inf) return 0;
          return lp_number(t, line_no);
        };
        if (toks.size() == 2 && lower_case(toks[1]) == "free") {
          auto& b = bounds[names.index(toks[0])];
          b.lower_minus_inf = true;
          b.upper_set = true;
          b.upper.reset();
        } else if (toks.size() == 5 && is_operator(toks[1]) && is_operator(toks[3])) {
          auto& b = bounds[names.index(toks[2])];
          bool mi, pi;
          BigInt lo = bound_value(toks[0], mi, pi);
          if (mi) {
            b.lower_minus_inf = true;
          } else {
            b.lower = lo;
            b.lower_set = true;
          }
          BigInt up = bound_value(toks[4], mi, pi);
          b.upper_set = true;
          if (pi) {
            b.upper.reset();
          } else {
            b.upper = up;
          }
        } else if (toks.size() == 3 && is_operator(toks[1])) {
          const bool var_first = !is_number_token(toks[0]) && lower_case(toks[0]).find("inf") == std::string::npos;
          const std::string& var = var_first ? toks[0] : toks[2];
          const std::string& val = var_first ? toks[2] : toks[0];
          char op = op_code(toks[1]);
          if (!var_first && op != 'E') op = op == 'L' ? 'G' : 'L';
          auto& b = bounds[names.index(var)];
          bool mi, pi;
          BigInt v = bound_value(val, mi, pi);
          if (op == 'G' || op == 'E') {
            if (mi) {
              b.lower_minus_inf = true;
            } else {
              b.lower = v;
              b.lower_set = true;
            }
          }
          if (op == 'L' || op == 'E') {
            b.upper_set = true;
            if (pi) {
              b.upper.reset();
            } else {
              b.upper = v;
            }
          }
        } else {
          throw ParseError("unrecognized bound line", line_no, 1);
        }
        break;
      }
      case Section::General:
        for (const auto& t : toks) integral_ids.push_back(names.index(t));
        break;
      case Section::Binary:
        for (const auto& t : toks) {
          const auto id = names.index(t);
          integral_ids.push_back(id);
          auto& b = bounds[id];
          b.lower = 0;
          b.lower_set = true;
          b.upper = 1;
          b.upper_set = true;
        }
        break;
    }
  }
  if (!pending.empty()) throw ParseError("unterminated constraint", pending_line, 1);
  if (section != Section::End) throw ParseError("missing End", line_no, 1);
  return assemble(names, rows, objective, has_objective && !objective.empty() &&
                                              std::any_of(objective.begin(), objective.end(),
                                                          [](const auto& kv) { return kv.second != 0; }),
                  bounds, integral_ids);
}

// ---------------------------------------------------------------- MPS text (free format)

std::string export_mps(const IntegerProgram& p, const ExportOptions& options) {
  auto number = [&](const BigInt& v, const std::string& where) {
    std::string s = v.str();
    if (options.strict_fixed_mps && s.size() > kFixedMpsFieldWidth)
      throw InvariantError("MPS numeric field overflow at " + where + ": value needs " +
                           std::to_string(s.size()) + " characters, field holds " +
                           std::to_string(kFixedMpsFieldWidth));
    return s;
  };
  std::ostringstream out;
  out << "NAME compact_ilp\nROWS\n N obj\n";
  const char row_type = p.sense == Sense::Eq ? 'E' : 'L';
  for (std::size_t i = 0; i < p.num_constraints; ++i) out << ' ' << row_type << ' ' << row_name(i) << "\n";
  out << "COLUMNS\n";
  std::vector<std::vector<std::pair<std::size_t, BigInt>>> cols(p.num_vars);
  for (const auto& e : p.entries) cols[e.col].emplace_back(e.row, e.coef);
  bool in_int = false;
  for (std::size_t j = 0; j < p.num_vars; ++j) {
    if (p.integral[j] != in_int) {
      out << " MARKER 'MARKER' " << (p.integral[j] ? "'INTORG'" : "'INTEND'") << "\n";
      in_int = p.integral[j];
    }
    bool written = false;
    if (p.objective && (*p.objective)[j] != 0) {
      out << ' ' << var_name(j) << " obj "
          << number((*p.objective)[j], "objective coefficient of column " + std::to_string(j)) << "\n";
      written = true;
    }
    for (const auto& [row, coef] : cols[j]) {
      out << ' ' << var_name(j) << ' ' << row_name(row) << ' '
          << number(coef, "(" + std::to_string(row) + "," + std::to_string(j) + ") [" + row_name(row) + " " + var_name(j) + "]") << "\n";
      written = true;
    }
    if (!written) out << ' ' << var_name(j) << " obj 0\n";
  }
  if (in_int) out << " MARKER 'MARKER' 'INTEND'\n";
  out << "RHS\n";
  for (std::size_t i = 0; i < p.num_constraints; ++i) {
    if (p.rhs[i] != 0)
      out << " rhs " << row_name(i) << ' ' << number(p.rhs[i], "rhs of row " + std::to_string(i)) << "\n";
  }
  out << "BOUNDS\n";
  for (std::size_t j = 0; j < p.num_vars; ++j) {
    out << " LO bnd " << var_name(j) << ' ' << number(p.lower[j], "lower bound of column " + std::to_string(j))
        << "\n";
    if (p.upper[j]) {
      out << " UP bnd " << var_name(j) << ' '
          << number(*p.upper[j], "upper bound of column " + std::to_string(j)) << "\n";
    } else {
      out << " PL bnd " << var_name(j) << "\n";
    }
  }
  out << "ENDATA\n";
  return out.str();
}

IntegerProgram import_mps(std::string_view bytes) {
  enum class Section { None, Rows, Columns, Rhs, Ranges, Bounds, End };
  Section section = Section::None;
  NameTable names;
  std::vector<RawRow> rows;
  std::unordered_map<std::string, std::size_t> row_ids;
  std::string objective_row;
  std::map<std::size_t, BigInt> objective;
  std::map<std::size_t, RawBounds> bounds;
  std::vector<std::size_t> integral_ids;
  bool in_int = false;

  std::istringstream in{std::string(bytes)};
  std::string raw;
  std::size_t line_no = 0;
  auto number = [&](const std::string& t) {
    BigInt v;
    if (!parse_bigint(t, v)) throw ParseError("expected integer, got '" + t + "'", line_no, 1);
    return v;
  };
  auto add_coef = [&](std::size_t col, const std::string& row, const std::string& value) {
    const BigInt v = number(value);
    if (row == objective_row) {
      objective[col] += v;
      return;
    }
    auto it = row_ids.find(row);
    if (it == row_ids.end()) throw ParseError("unknown row '" + row + "'", line_no, 1);
    rows[it->second].terms.emplace_back(col, v);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && (raw[0] == '*')) continue;
    auto toks = split_ws(raw);
    if (toks.empty()) continue;
    const bool indented = std::isspace(static_cast<unsigned char>(raw[0]));
    if (!indented) {
      const std::string head = lower_case(toks[0]);
      if (head == "name") continue;
      if (head == "rows") section = Section::Rows;
      else if (head == "columns") section = Section::Columns;
      else if (head == "rhs") section = Section::Rhs;
      else if (head == "ranges") section = Section::Ranges;
      else if (head == "bounds") section = Section::Bounds;
      else if (head == "endata") section = Section::End;
      else throw ParseError("unknown section '" + toks[0] + "'", line_no, 1);
      continue;
    }
    switch (section) {
      case Section::None:
      case Section::End:
        throw ParseError("data outside a section", line_no, 1);
      case Section::Rows: {
        if (toks.size() != 2) throw ParseError("ROWS line needs type and name", line_no, 1);
        const char type = static_cast<char>(std::toupper(static_cast<unsigned char>(toks[0][0])));
        if (type == 'N') {
          if (objective_row.empty()) objective_row = toks[1];
          break;
        }
        if (type != 'L' && type != 'G' && type != 'E')
          throw ParseError("unknown row type '" + toks[0] + "'", line_no, 1);
        row_ids[toks[1]] = rows.size();
        RawRow r;
        r.op = type;
        r.rhs = 0;
        rows.push_back(std::move(r));
        break;
      }
      case Section::Columns: {
        if (toks.size() >= 3 && toks[1] == "'MARKER'") {
          if (toks[2] == "'INTORG'") in_int = true;
          else if (toks[2] == "'INTEND'") in_int = false;
          else throw ParseError("unknown marker", line_no, 1);
          break;
        }
        if (toks.size() != 3 && toks.size() != 5) throw ParseError("COLUMNS line malformed", line_no, 1);
        const auto col = names.index(toks[0]);
        if (in_int && (integral_ids.empty() || integral_ids.back() != col)) integral_ids.push_back(col);
        add_coef(col, toks[1], toks[2]);
        if (toks.size() == 5) add_coef(col, toks[3], toks[4]);
        break;
      }
      case Section::Rhs: {
        if (toks.size() != 3 && toks.size() != 5) throw ParseError("RHS line malformed", line_no, 1);
        for (std::size_t k = 1; k + 1 < toks.size(); k += 2) {
          if (toks[k] == objective_row) continue;
          auto it = row_ids.find(toks[k]);
          if (it == row_ids.end()) throw ParseError("unknown row '" + toks[k] + "'", line_no, 1);
          rows[it->second].rhs = number(toks[k + 1]);
        }
        break;
      }
      case Section::Ranges:
        throw ParseError("RANGES are not supported", line_no, 1);
      case Section::Bounds: {
        if (toks.size() < 3) throw ParseError("BOUNDS line malformed", line_no, 1);
        const std::string type = lower_case(toks[0]);
        const auto col = names.index(toks[2]);
        auto& b = bounds[col];
        auto need_value = [&]() {
          if (toks.size() != 4) throw ParseError("bound needs a value", line_no, 1);
          return number(toks[3]);
        };
        if (type == "lo" || type == "li") {
          b.lower = need_value();
          b.lower_set = true;
          if (type == "li") integral_ids.push_back(col);
        } else if (type == "up" || type == "ui") {
          b.upper = need_value();
          b.upper_set = true;
          if (type == "ui") integral_ids.push_back(col);
        } else if (type == "fx") {
          b.lower = need_value();
          b.lower_set = true;
          b.upper = b.lower;
          b.upper_set = true;
        } else if (type == "fr") {
          b.lower_minus_inf = true;
          b.upper_set = true;
          b.upper.reset();
        } else if (type == "mi") {
          b.lower_minus_inf = true;
        } else if (type == "pl") {
          b.upper_set = true;
          b.upper.reset();
        } else if (type == "bv") {
          b.lower = 0;
          b.lower_set = true;
          b.upper = 1;
          b.upper_set = true;
          integral_ids.push_back(col);
        } else {
          throw ParseError("unknown bound type '" + toks[0] + "'", line_no, 1);
        }
        break;
      }
    }
  }
  if (section != Section::End) throw ParseError("missing ENDATA", line_no, 1);
  const bool has_obj = std::any_of(objective.begin(), objective.end(), [](const auto& kv) { return kv.second != 0; });
  return assemble(names, rows, objective, has_obj, bounds, integral_ids);
}

}  // namespace

ProgramFormat parse_program_format(std::string_view name) {
  if (name == "json" || name == "canonical-json") return ProgramFormat::CanonicalJson;
  if (name == "lp" || name == "lp-text") return ProgramFormat::LpText;
  if (name == "mps" || name == "mps-text") return ProgramFormat::MpsText;
  throw UsageError("unknown program format '" + std::string(name) + "'");
}

std::string export_program(const IntegerProgram& p, ProgramFormat format, const ExportOptions& options) {
  switch (format) {
    case ProgramFormat::CanonicalJson:
      return export_json(p);
    case ProgramFormat::LpText:
      return export_lp(p);
    case ProgramFormat::MpsText:
      return export_mps(p, options);
  }
  return {};
}

IntegerProgram import_program(std::string_view bytes, ProgramFormat format) {
  switch (format) {
    case ProgramFormat::CanonicalJson:
      return import_json(bytes);
    case ProgramFormat::LpText:
      return import_lp(bytes);
    case ProgramFormat::MpsText:
      return import_mps(bytes);
  }
  throw UsageError("unknown format");
}

}  // namespace compact_ilp
