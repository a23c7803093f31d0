#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "compact_ilp/bits.hpp"
#include "compact_ilp/instances.hpp"
#include "json.hpp"

namespace compact_ilp {

struct VerifierReport {
  bool accept = false;
  std::string reason;  // identifier of the first failed check; empty on accept
  std::uint64_t steps = 0;
  std::map<std::string, std::uint64_t> calls;  // per structure
  std::size_t witness_bits = 0;

  std::uint64_t total_calls() const;
  nlohmann::ordered_json to_json() const;
  friend bool operator==(const VerifierReport&, const VerifierReport&) = default;
};

/// Output of the preprocessor: opaque advice bytes and the witness length.
struct Preprocessed {
  std::string advice;
  std::size_t ell = 0;
};

/// The verifier side. It sees only the advice it was loaded from.
class Verifier {
 public:
  virtual ~Verifier() = default;
  virtual std::size_t witness_length() const = 0;
  /// Throws UsageError when bits.size() != witness_length(). Pure: equal
  /// inputs give equal reports.
  virtual VerifierReport verify(const BitString& bits) const = 0;
};

class Protocol {
 public:
  virtual ~Protocol() = default;
  virtual Variant variant() const = 0;
  std::string name() const { return variant_name(variant()); }

  /// Throws UsageError when the instance violates the protocol precondition.
  virtual Preprocessed preprocess(const ProblemInstance& inst) const = 0;
  /// Parses advice once; ParseError on malformed blobs.
  virtual std::unique_ptr<Verifier> load(std::string_view advice) const = 0;

  /// Closed-form witness length.
  virtual std::size_t length_formula(const ProblemInstance& inst) const = 0;
  /// Closed-form upper bound on structure calls per verification.
  virtual std::uint64_t call_budget(const ProblemInstance& inst) const = 0;
  /// The parameter reported next to n in audits.
  virtual std::size_t parameter(const ProblemInstance& inst) const = 0;
  virtual std::string length_formula_text() const = 0;
  virtual std::string call_budget_text() const = 0;
};

std::unique_ptr<Protocol> rwaycut_protocol();
std::unique_ptr<Protocol> multiwaycut_protocol();
std::unique_ptr<Protocol> mcsp_protocol();
std::unique_ptr<Protocol> longpath_protocol();
std::unique_ptr<Protocol> steiner_protocol();
std::unique_ptr<Protocol> discretization_protocol();

/// Throws UsageError for set-cover and wvc, which have no protocol.
std::unique_ptr<Protocol> make_protocol(Variant v);
bool has_protocol(Variant v);

template <typename T>
struct Decoded {
  std::optional<T> value;
  std::string reason;  // set when value is empty
  std::uint64_t steps = 0;
};

// ---- r-way cut -------------------------------------------------------------
// |X| : w(k+1) | k edge slots : w(m) | t : w(k+1) | k group sizes : w(2k+1) |
// 2k vertex slots : w(n)

struct RWayCutWitness {
  std::vector<std::size_t> edges;                // indices into the sorted edge list
  std::vector<std::vector<std::size_t>> groups;  // t groups of vertices
  friend bool operator==(const RWayCutWitness&, const RWayCutWitness&) = default;
};

struct RWayCutLayout {
  std::size_t n = 0, m = 0, k = 0;
  static RWayCutLayout of(const RWayCutInstance& inst) { return {inst.graph.num_vertices(), inst.graph.num_edges(), inst.k}; }
  std::size_t length() const;
};

BitString encode(const RWayCutLayout& layout, const RWayCutWitness& w);
Decoded<RWayCutWitness> decode(const RWayCutLayout& layout, const BitString& bits);

// ---- multiway cut ----------------------------------------------------------
// |X| : w(k+1) | k vertex slots : w(n)

struct MultiwayCutWitness {
  std::vector<std::size_t> cut;
  friend bool operator==(const MultiwayCutWitness&, const MultiwayCutWitness&) = default;
};

struct MultiwayCutLayout {
  std::size_t n = 0, k = 0;
  static MultiwayCutLayout of(const MultiwayCutInstance& inst) { return {inst.graph.num_vertices(), inst.k}; }
  std::size_t length() const;
};

BitString encode(const MultiwayCutLayout& layout, const MultiwayCutWitness& w);
Decoded<MultiwayCutWitness> decode(const MultiwayCutLayout& layout, const BitString& bits);

// ---- MCSP ------------------------------------------------------------------
// k cut end positions : w(n+1) each | k permutation entries : w(k) each

struct McspWitness {
  std::vector<std::size_t> cuts;  // non-decreasing end positions, last == n
  std::vector<std::size_t> f;     // block i of x becomes block f[i] of y
  friend bool operator==(const McspWitness&, const McspWitness&) = default;
};

struct McspLayout {
  std::size_t n = 0, k = 1;
  static McspLayout of(const McspInstance& inst) { return {inst.x.size(), inst.k}; }
  std::size_t length() const;
};

BitString encode(const McspLayout& layout, const McspWitness& w);
Decoded<McspWitness> decode(const McspLayout& layout, const BitString& bits);

// ---- Long Path -------------------------------------------------------------
// count : w(2x+2) | 2x+1 slots of (tag : 1 | a : w(n) | b : w(n))

struct LongPathItem {
  bool fvs = false;   // a vertex of the feedback vertex set X
  std::size_t a = 0;  // the vertex, or the first endpoint of a subpath of G - X
  std::size_t b = 0;  // the last endpoint; 0 for FVS items
  friend bool operator==(const LongPathItem&, const LongPathItem&) = default;
};

struct LongPathWitness {
  std::vector<LongPathItem> items;
  friend bool operator==(const LongPathWitness&, const LongPathWitness&) = default;
};

struct LongPathLayout {
  std::size_t n = 0, x = 0;  // x = |X|
  std::size_t slots() const { return 2 * x + 1; }
  std::size_t length() const;
};

BitString encode(const LongPathLayout& layout, const LongPathWitness& w);
Decoded<LongPathWitness> decode(const LongPathLayout& layout, const BitString& bits);

/// Local-ratio 2-approximation of a minimum feedback vertex set; sorted.
std::vector<std::size_t> fvs_2approx(const Graph& g);
bool is_feedback_vertex_set(const Graph& g, const std::vector<std::size_t>& x);
/// Splits a vertex sequence forming a path of G into witness items for X.
LongPathWitness longpath_items(const std::vector<std::size_t>& path, const std::vector<std::size_t>& x);

// ---- Steiner tree ----------------------------------------------------------
// |Y| : w(k) | k-1 vertex slots : w(n) | 2k-2 parent slots : w(2k-1)
// Nodes are T (in sorted order) followed by Y; node i >= 1 names its parent.

struct SteinerWitness {
  std::vector<std::size_t> extra;    // Y
  std::vector<std::size_t> parents;  // parents[i-1] is the parent of node i
  friend bool operator==(const SteinerWitness&, const SteinerWitness&) = default;
};

struct SteinerLayout {
  std::size_t n = 0, t = 1;  // t = |T|
  static SteinerLayout of(const SteinerInstance& inst) { return {inst.graph.num_vertices(), inst.terminals.size()}; }
  std::size_t length() const;
};

BitString encode(const SteinerLayout& layout, const SteinerWitness& w);
Decoded<SteinerWitness> decode(const SteinerLayout& layout, const BitString& bits);

// ---- Optimal discretization ------------------------------------------------
// |X| : w(k+1) | |Y| : w(k+1) | k index slots : w(max(px, py))
// X indices come first, then Y indices, each strictly increasing.

struct DiscretizationWitness {
  std::vector<std::size_t> xs;  // indices into the x pool
  std::vector<std::size_t> ys;  // indices into the y pool
  friend bool operator==(const DiscretizationWitness&, const DiscretizationWitness&) = default;
};

struct DiscretizationLayout {
  std::size_t px = 0, py = 0, k = 0;
  std::size_t length() const;
};

/// Candidate line positions: midpoints between consecutive distinct x (y) coordinates.
std::vector<Rational> discretization_x_pool(const DiscretizationInstance& inst);
std::vector<Rational> discretization_y_pool(const DiscretizationInstance& inst);
DiscretizationLayout discretization_layout(const DiscretizationInstance& inst);

BitString encode(const DiscretizationLayout& layout, const DiscretizationWitness& w);
Decoded<DiscretizationWitness> decode(const DiscretizationLayout& layout, const BitString& bits);

// ---- drivers ---------------------------------------------------------------

struct EnumerationResult {
  bool yes = false;
  std::optional<BitString> witness;  // first accepted witness in index order
  std::uint64_t evaluated = 0;
  std::size_t ell = 0;
};

/// Runs the preprocessor once and the verifier on all 2^ell strings.
/// BudgetError when ell > max_ell or the deadline passes.
EnumerationResult enumerate_decide(const Protocol& p, const ProblemInstance& inst, std::size_t max_ell = 24,
                                   std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt);

struct AuditReport {
  std::string protocol;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t ell = 0;
  std::size_t ell_formula = 0;
  std::uint64_t steps = 0;  // maximum over audited witnesses
  std::uint64_t calls = 0;  // maximum over audited witnesses
  std::uint64_t call_budget = 0;
  std::uint64_t witnesses = 0;
  std::uint64_t accepted = 0;
  std::vector<std::string> failures;  // each names the protocol and the formula

  bool ok() const { return failures.empty(); }
  /// {protocol, n, k, ell, steps, calls}
  nlohmann::ordered_json to_json() const;
};

/// Verifies every witness when ell <= exhaustive_ell, otherwise `samples`
/// seeded random witnesses plus the all-zero one; `extra` witnesses are always
/// included. Checks ell against length_formula and calls against call_budget.
AuditReport audit_costs(const Protocol& p, const ProblemInstance& inst, const std::vector<BitString>& extra = {},
                        std::size_t exhaustive_ell = 16, std::size_t samples = 256, std::uint64_t seed = 1);

}  // namespace compact_ilp
