#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

#include "compact_ilp/errors.hpp"
#include "compact_ilp/instances.hpp"

namespace compact_ilp {

namespace {

const std::vector<std::pair<Variant, std::string>>& variant_names() {
  static const std::vector<std::pair<Variant, std::string>> names = {
      {Variant::SetCover, "set-cover"},   {Variant::Wvc, "wvc"},
      {Variant::RWayCut, "r-way-cut"},     {Variant::MultiwayCut, "multiway-cut"},
      {Variant::Mcsp, "mcsp"},             {Variant::LongPath, "long-path"},
      {Variant::Steiner, "steiner"},       {Variant::Discretization, "discretization"},
  };
  return names;
}

struct Token {
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    if (line[i] == '#') break;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

class LineParser {
 public:
  explicit LineParser(std::string_view text) : text_(text) {}

  /// Next non-blank, non-comment line; false at end of input.
  bool next() {
    while (pos_ <= text_.size()) {
      if (pos_ == text_.size()) {
        pos_ = text_.size() + 1;
        return false;
      }
      std::size_t end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      raw_ = text_.substr(pos_, end - pos_);
      if (!raw_.empty() && raw_.back() == '\r') raw_.remove_suffix(1);
      pos_ = end + 1;
      ++line_;
      tokens_ = tokenize(raw_);
      if (tokens_.empty()) continue;
      return true;
    }
    return false;
  }

  const std::vector<Token>& tokens() const { return tokens_; }
  std::string_view raw() const { return raw_; }
  std::size_t line() const { return line_; }

  [[noreturn]] void fail(const std::string& what, std::size_t column = 1) const { throw ParseError(what, line_, column); }

  void expect_arity(std::size_t n) const {
    if (tokens_.size() != n)
      fail("'" + tokens_[0].text + "' expects " + std::to_string(n - 1) + " argument(s)", tokens_[0].column);
  }

  std::size_t count(std::size_t i) const {
    const auto& t = tokens_.at(i);
    BigInt v;
    if (!parse_bigint(t.text, v) || v < 0 || v > BigInt(std::numeric_limits<std::uint32_t>::max()))
      fail("expected a non-negative integer, found '" + t.text + "'", t.column);
    return static_cast<std::size_t>(v);
  }

  BigInt integer(std::size_t i) const {
    const auto& t = tokens_.at(i);
    BigInt v;
    if (!parse_bigint(t.text, v)) fail("expected an integer, found '" + t.text + "'", t.column);
    return v;
  }

  Rational rational(std::size_t i) const {
    const auto& t = tokens_.at(i);
    Rational v;
    if (!parse_rational(t.text, v)) fail("expected a rational p/q, found '" + t.text + "'", t.column);
    return v;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
  std::string_view raw_;
  std::vector<Token> tokens_;
};

/// Collects the lines shared by every variant before building the instance.
struct Collected {
  std::optional<std::pair<std::size_t, std::size_t>> header;  // p n m
  std::size_t header_line = 0;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;
  std::map<std::size_t, BigInt> weights;
  std::vector<std::size_t> terminals;
  std::vector<std::size_t> terminal_lines;
  std::map<std::string, BigInt> params;
  std::optional<std::size_t> universe;
  std::vector<std::vector<std::size_t>> sets;
  std::optional<std::string> x, y;
  std::vector<Point> w1, w2;
};

bool is_graph_variant(Variant v) {
  return v == Variant::Wvc || v == Variant::RWayCut || v == Variant::MultiwayCut || v == Variant::LongPath ||
         v == Variant::Steiner;
}

std::vector<std::string> allowed_params(Variant v) {
  switch (v) {
    case Variant::SetCover:
    case Variant::Wvc:
    case Variant::LongPath:
    case Variant::Steiner:
      return {"l"};
    case Variant::RWayCut:
      return {"r", "k"};
    case Variant::MultiwayCut:
    case Variant::Mcsp:
    case Variant::Discretization:
      return {"k"};
  }
  return {};
}

Graph make_graph(const Collected& c) {
  if (!c.header) throw ParseError("missing 'p <n> <m>' line");
  const auto [n, m] = *c.header;
  if (c.edges.size() != m)
    throw ParseError("header announces " + std::to_string(m) + " edges but " + std::to_string(c.edges.size()) +
                         " were given",
                     c.header_line, 1);
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    const auto [u, v] = c.edges[i];
    if (u >= n || v >= n) throw ParseError("edge names a vertex outside 0.." + std::to_string(n - 1), c.edge_lines[i], 1);
  }
  try {
    return Graph::from_edges(n, c.edges);
  } catch (const InvariantError& e) {
    throw InvariantError(std::string("graph: ") + e.what());
  }
}

std::vector<std::size_t> sorted_terminals(const Collected& c, std::size_t n) {
  for (std::size_t i = 0; i < c.terminals.size(); ++i)
    if (c.terminals[i] >= n)
      throw InvariantError("line " + std::to_string(c.terminal_lines[i]) + ": terminal " +
                           std::to_string(c.terminals[i]) + " is not a vertex of the graph");
  auto t = c.terminals;
  std::sort(t.begin(), t.end());
  if (std::adjacent_find(t.begin(), t.end()) != t.end()) throw InvariantError("repeated terminal");
  return t;
}

std::size_t param_count(const Collected& c, const std::string& key) {
  auto it = c.params.find(key);
  if (it == c.params.end()) throw ParseError("missing parameter line '" + key + " <value>'");
  if (it->second < 0) throw InvariantError("parameter " + key + " must be non-negative");
  return static_cast<std::size_t>(it->second);
}

ProblemInstance parse_body(std::string_view text, std::optional<Variant> expected) {
  LineParser in(text);
  if (!in.next()) throw ParseError("empty instance file");
  if (in.tokens()[0].text != "problem" || in.tokens().size() != 2)
    in.fail("first line must be 'problem <name>'");
  Variant variant;
  try {
    variant = parse_variant(in.tokens()[1].text);
  } catch (const UsageError&) {
    in.fail("unknown problem '" + in.tokens()[1].text + "'", in.tokens()[1].column);
  }
  if (expected && *expected != variant)
    in.fail("expected problem '" + variant_name(*expected) + "', found '" + variant_name(variant) + "'",
            in.tokens()[1].column);
  const auto params = allowed_params(variant);
  const bool graph = is_graph_variant(variant);
  Collected c;
  while (in.next()) {
    const auto& tok = in.tokens();
    const std::string& key = tok[0].text;
    if (graph && key == "p") {
      in.expect_arity(3);
      if (c.header) in.fail("repeated 'p' line");
      c.header = {in.count(1), in.count(2)};
      c.header_line = in.line();
    } else if (graph && key == "e") {
      in.expect_arity(3);
      if (!c.header) in.fail("'e' before 'p'");
      c.edges.emplace_back(in.count(1), in.count(2));
      c.edge_lines.push_back(in.line());
    } else if (variant == Variant::Wvc && key == "w") {
      in.expect_arity(3);
      const std::size_t v = in.count(1);
      if (!c.header || v >= c.header->first) in.fail("weight for unknown vertex " + std::to_string(v), tok[1].column);
      if (!c.weights.emplace(v, in.integer(2)).second) in.fail("repeated weight for vertex " + std::to_string(v));
    } else if ((variant == Variant::MultiwayCut || variant == Variant::Steiner) && key == "t") {
      in.expect_arity(2);
      c.terminals.push_back(in.count(1));
      c.terminal_lines.push_back(in.line());
    } else if (variant == Variant::SetCover && key == "u") {
      in.expect_arity(2);
      if (c.universe) in.fail("repeated 'u' line");
      c.universe = in.count(1);
    } else if (variant == Variant::SetCover && key == "s") {
      std::vector<std::size_t> set;
      for (std::size_t i = 1; i < tok.size(); ++i) set.push_back(in.count(i));
      std::sort(set.begin(), set.end());
      if (std::adjacent_find(set.begin(), set.end()) != set.end()) in.fail("set lists an element twice");
      if (c.universe && !set.empty() && set.back() >= *c.universe)
        in.fail("set element " + std::to_string(set.back()) + " outside the universe");
      c.sets.push_back(std::move(set));
    } else if (variant == Variant::Mcsp && (key == "x" || key == "y")) {
      auto& slot = key == "x" ? c.x : c.y;
      if (slot) in.fail("repeated '" + key + "' line");
      const std::string_view raw = in.raw();
      const std::size_t at = raw.find(key);
      slot = at + 2 <= raw.size() ? std::string(raw.substr(at + 2)) : std::string();
    } else if (variant == Variant::Discretization && key == "pt") {
      in.expect_arity(4);
      const std::string& side = tok[1].text;
      if (side != "1" && side != "2") in.fail("point set must be 1 or 2", tok[1].column);
      (side == "1" ? c.w1 : c.w2).push_back({in.rational(2), in.rational(3)});
    } else if (std::find(params.begin(), params.end(), key) != params.end()) {
      in.expect_arity(2);
      if (c.params.count(key)) in.fail("repeated parameter '" + key + "'");
      c.params[key] = in.integer(1);
    } else {
      in.fail("unexpected line '" + key + "' for problem " + variant_name(variant), tok[0].column);
    }
  }

  ProblemInstance out;
  switch (variant) {
    case Variant::SetCover: {
      if (!c.universe) throw ParseError("missing 'u <size>' line");
      SetCoverInstance s;
      s.universe_size = *c.universe;
      s.sets = c.sets;
      s.budget = param_count(c, "l");
      out = s;
      break;
    }
    case Variant::Wvc: {
      WvcInstance w;
      w.graph = make_graph(c);
      w.weights.assign(w.graph.num_vertices(), BigInt(1));
      for (const auto& [v, wt] : c.weights) w.weights[v] = wt;
      auto it = c.params.find("l");
      if (it == c.params.end()) throw ParseError("missing parameter line 'l <value>'");
      w.budget = it->second;
      out = w;
      break;
    }
    case Variant::RWayCut:
      out = RWayCutInstance{make_graph(c), param_count(c, "r"), param_count(c, "k")};
      break;
    case Variant::MultiwayCut: {
      Graph g = make_graph(c);
      auto t = sorted_terminals(c, g.num_vertices());
      out = MultiwayCutInstance{std::move(g), std::move(t), param_count(c, "k")};
      break;
    }
    case Variant::Mcsp:
      if (!c.x || !c.y) throw ParseError("mcsp needs both 'x <string>' and 'y <string>' lines");
      out = McspInstance{*c.x, *c.y, param_count(c, "k")};
      break;
    case Variant::LongPath:
      out = LongPathInstance{make_graph(c), param_count(c, "l")};
      break;
    case Variant::Steiner: {
      Graph g = make_graph(c);
      auto t = sorted_terminals(c, g.num_vertices());
      out = SteinerInstance{std::move(g), std::move(t), param_count(c, "l")};
      break;
    }
    case Variant::Discretization:
      out = DiscretizationInstance{c.w1, c.w2, param_count(c, "k")};
      break;
  }
  validate_instance(out);
  return out;
}

void write_graph(std::ostringstream& os, const Graph& g) {
  os << "p " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (auto [u, v] : g.edges()) os << "e " << u << ' ' << v << '\n';
}

}  // namespace

std::string variant_name(Variant v) {
  for (const auto& [var, name] : variant_names())
    if (var == v) return name;
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  for (const auto& [var, n] : variant_names())
    if (n == name) return var;
  throw UsageError("unknown problem variant '" + std::string(name) + "'");
}

Variant variant_of(const ProblemInstance& inst) { return static_cast<Variant>(inst.index()); }

void validate_instance(const ProblemInstance& inst) {
  std::visit(
      [](const auto& i) {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, SetCoverInstance> || std::is_same_v<T, WvcInstance>) {
          i.validate();
        } else if constexpr (std::is_same_v<T, MultiwayCutInstance> || std::is_same_v<T, SteinerInstance>) {
          for (std::size_t j = 0; j < i.terminals.size(); ++j) {
            if (i.terminals[j] >= i.graph.num_vertices())
              throw InvariantError("terminal " + std::to_string(i.terminals[j]) + " is not a vertex of the graph");
            if (j > 0 && i.terminals[j] <= i.terminals[j - 1])
              throw InvariantError("terminals must be sorted and distinct");
          }
          if constexpr (std::is_same_v<T, SteinerInstance>) {
            if (i.terminals.empty()) throw InvariantError("steiner: terminal set must be non-empty");
          }
        } else if constexpr (std::is_same_v<T, McspInstance>) {
          if (i.x.size() != i.y.size())
            throw InvariantError("mcsp: strings have lengths " + std::to_string(i.x.size()) + " and " +
                                 std::to_string(i.y.size()));
          if (i.k < 1) throw InvariantError("mcsp: k must be at least 1");
        } else if constexpr (std::is_same_v<T, DiscretizationInstance>) {
          auto key = [](const Point& p) { return std::make_pair(p.x, p.y); };
          std::vector<std::pair<Rational, Rational>> a, b;
          for (const auto& p : i.w1) a.push_back(key(p));
          for (const auto& p : i.w2) b.push_back(key(p));
          std::sort(a.begin(), a.end());
          std::sort(b.begin(), b.end());
          if (std::adjacent_find(a.begin(), a.end()) != a.end() || std::adjacent_find(b.begin(), b.end()) != b.end())
            throw InvariantError("discretization: a point set repeats a point");
          std::vector<std::pair<Rational, Rational>> both;
          std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
          if (!both.empty())
            throw InvariantError("discretization: point (" + to_string(both[0].first) + "," +
                                 to_string(both[0].second) + ") lies in both W1 and W2");
        }
      },
      inst);
}

ProblemInstance parse_instance(std::string_view text) { return parse_body(text, std::nullopt); }

ProblemInstance parse_instance(std::string_view text, Variant expected) { return parse_body(text, expected); }

std::string write_instance(const ProblemInstance& inst) {
  std::ostringstream os;
  os << "problem " << variant_name(variant_of(inst)) << '\n';
  std::visit(
      [&os](const auto& i) {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, SetCoverInstance>) {
          os << "u " << i.universe_size << '\n';
          for (const auto& s : i.sets) {
            os << 's';
            for (auto e : s) os << ' ' << e;
            os << '\n';
          }
          os << "l " << i.budget << '\n';
        } else if constexpr (std::is_same_v<T, WvcInstance>) {
          write_graph(os, i.graph);
          for (std::size_t v = 0; v < i.weights.size(); ++v) os << "w " << v << ' ' << i.weights[v] << '\n';
          os << "l " << i.budget << '\n';
        } else if constexpr (std::is_same_v<T, RWayCutInstance>) {
          write_graph(os, i.graph);
          os << "r " << i.r << "\nk " << i.k << '\n';
        } else if constexpr (std::is_same_v<T, MultiwayCutInstance>) {
          write_graph(os, i.graph);
          for (auto t : i.terminals) os << "t " << t << '\n';
          os << "k " << i.k << '\n';
        } else if constexpr (std::is_same_v<T, McspInstance>) {
          os << "x " << i.x << "\ny " << i.y << "\nk " << i.k << '\n';
        } else if constexpr (std::is_same_v<T, LongPathInstance>) {
          write_graph(os, i.graph);
          os << "l " << i.ell << '\n';
        } else if constexpr (std::is_same_v<T, SteinerInstance>) {
          write_graph(os, i.graph);
          for (auto t : i.terminals) os << "t " << t << '\n';
          os << "l " << i.ell << '\n';
        } else if constexpr (std::is_same_v<T, DiscretizationInstance>) {
          for (const auto& p : i.w1) os << "pt 1 " << to_string(p.x) << ' ' << to_string(p.y) << '\n';
          for (const auto& p : i.w2) os << "pt 2 " << to_string(p.x) << ' ' << to_string(p.y) << '\n';
          os << "k " << i.k << '\n';
        }
      },
      inst);
  return os.str();
}

std::size_t instance_size(const ProblemInstance& inst) {
  return std::visit(
      [](const auto& i) -> std::size_t {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, SetCoverInstance>) {
          return i.universe_size;
        } else if constexpr (std::is_same_v<T, McspInstance>) {
          return i.x.size();
        } else if constexpr (std::is_same_v<T, DiscretizationInstance>) {
          return i.w1.size() + i.w2.size();
        } else {
          return i.graph.num_vertices();
        }
      },
      inst);
}

}  // namespace compact_ilp
