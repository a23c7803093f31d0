#include "compact_ilp/blob.hpp"
#include "compact_ilp/failure_oracle.hpp"
#include "protocol_internal.hpp"

namespace compact_ilp {

std::size_t MultiwayCutLayout::length() const { return field_width(k + 1) + k * field_width(n); }

BitString encode(const MultiwayCutLayout& L, const MultiwayCutWitness& w) {
  if (w.cut.size() > L.k) throw UsageError("multiway cut witness has more than k vertices");
  BitWriter out;
  out.put(w.cut.size(), field_width(L.k + 1));
  for (std::size_t i = 0; i < L.k; ++i) out.put(i < w.cut.size() ? w.cut[i] : 0, field_width(L.n));
  return out.finish();
}

Decoded<MultiwayCutWitness> decode(const MultiwayCutLayout& L, const BitString& bits) {
  detail::require_length(bits, L.length());
  BitReader in(bits);
  std::uint64_t steps = 1;
  const std::size_t x = in.get(field_width(L.k + 1));
  if (x > L.k) return detail::decode_fail<MultiwayCutWitness>("cut-size-exceeds-k", steps);
  MultiwayCutWitness w;
  for (std::size_t i = 0; i < L.k; ++i) {
    const std::size_t v = in.get(field_width(L.n));
    ++steps;
    if (i < x) {
      if (v >= L.n) return detail::decode_fail<MultiwayCutWitness>("vertex-out-of-range", steps);
      w.cut.push_back(v);
    } else if (v != 0) {
      return detail::decode_fail<MultiwayCutWitness>("unused-vertex-slot-nonzero", steps);
    }
  }
  Decoded<MultiwayCutWitness> d;
  d.value = std::move(w);
  d.steps = steps;
  return d;
}

namespace {

constexpr const char* kTag = "multiway-cut-advice";

class MultiwayCutVerifier final : public Verifier {
 public:
  explicit MultiwayCutVerifier(std::string_view advice) {
    BlobReader in(advice, kTag, 1);
    layout_.n = in.u64();
    layout_.k = in.u64();
    const auto t = in.u64_list();
    terminals_.assign(t.begin(), t.end());
    oracle_ = FailureOracle::deserialize(in.section("oracle"));
    in.expect_end();
    is_terminal_.assign(layout_.n, false);
    for (auto v : terminals_) {
      if (v >= layout_.n) throw ParseError("multiway cut advice: terminal out of range");
      is_terminal_[v] = true;
    }
    if (oracle_.num_vertices() != layout_.n || oracle_.d_max() != layout_.k || oracle_.mode() != FailureMode::Vertex)
      throw ParseError("multiway cut advice: inconsistent oracle");
  }

  std::size_t witness_length() const override { return layout_.length(); }

  VerifierReport verify(const BitString& bits) const override {
    detail::require_length(bits, witness_length());
    auto decoded = decode(layout_, bits);
    std::uint64_t steps = decoded.steps;
    if (!decoded.value) return finish(false, decoded.reason, steps, bits, nullptr);
    const auto& cut = decoded.value->cut;
    for (std::size_t i = 0; i < cut.size(); ++i) {
      ++steps;
      if (is_terminal_[cut[i]]) return finish(false, "cut-contains-terminal", steps, bits, nullptr);
      for (std::size_t j = i + 1; j < cut.size(); ++j) {
        ++steps;
        if (cut[i] == cut[j]) return finish(false, "repeated-vertex", steps, bits, nullptr);
      }
    }
    FailureOracle oracle = oracle_;
    oracle.update(cut);
    for (std::size_t i = 0; i < terminals_.size(); ++i)
      for (std::size_t j = i + 1; j < terminals_.size(); ++j) {
        ++steps;
        if (oracle.query(terminals_[i], terminals_[j]))
          return finish(false, "terminals-connected", steps, bits, &oracle);
      }
    return finish(true, "", steps, bits, &oracle);
  }

 private:
  static VerifierReport finish(bool accept, std::string reason, std::uint64_t steps, const BitString& bits,
                               const FailureOracle* oracle) {
    VerifierReport r = detail::report(accept, std::move(reason), steps, bits.size());
    const OracleCounters c = oracle ? oracle->counters() : OracleCounters{};
    r.calls["failure-oracle"] = c.updates + c.queries;
    r.steps += c.steps;
    return r;
  }

  MultiwayCutLayout layout_;
  std::vector<std::size_t> terminals_;
  std::vector<bool> is_terminal_;
  FailureOracle oracle_;
};

class MultiwayCutProtocol final : public Protocol {
 public:
  Variant variant() const override { return Variant::MultiwayCut; }

  Preprocessed preprocess(const ProblemInstance& inst) const override {
    const auto& in = detail::expect_instance<MultiwayCutInstance>(inst, "multiway cut");
    validate_instance(inst);
    if (in.terminals.size() > 2 * in.k)
      throw UsageError("multiway cut: |T| = " + std::to_string(in.terminals.size()) + " exceeds 2k = " +
                       std::to_string(2 * in.k) +
                       "; the terminal reduction to |T| <= 2k is not implemented, reduce the instance first");
    BlobWriter out(kTag, 1);
    out.u64(in.graph.num_vertices());
    out.u64(in.k);
    out.u64_list(std::vector<std::uint64_t>(in.terminals.begin(), in.terminals.end()));
    out.section("oracle", FailureOracle::build(in.graph, FailureMode::Vertex, in.k).serialize());
    return {out.take(), MultiwayCutLayout::of(in).length()};
  }

  std::unique_ptr<Verifier> load(std::string_view advice) const override {
    return std::make_unique<MultiwayCutVerifier>(advice);
  }

  std::size_t length_formula(const ProblemInstance& inst) const override {
    const auto& in = detail::expect_instance<MultiwayCutInstance>(inst, "multiway cut");
    return ceil_log2(in.k + 1) + in.k * ceil_log2(in.graph.num_vertices());
  }

  std::uint64_t call_budget(const ProblemInstance& inst) const override {
    const auto& in = detail::expect_instance<MultiwayCutInstance>(inst, "multiway cut");
    return 1 + detail::choose2(in.terminals.size());
  }

  std::size_t parameter(const ProblemInstance& inst) const override {
    return detail::expect_instance<MultiwayCutInstance>(inst, "multiway cut").k;
  }

  std::string length_formula_text() const override { return "ceil(log2(k+1)) + k*ceil(log2 n)"; }
  std::string call_budget_text() const override { return "1 + C(|T|,2)"; }
};

}  // namespace

std::unique_ptr<Protocol> multiwaycut_protocol() { return std::make_unique<MultiwayCutProtocol>(); }

}  // namespace compact_ilp
