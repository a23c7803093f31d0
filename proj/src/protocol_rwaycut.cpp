#include "compact_ilp/blob.hpp"
#include "compact_ilp/failure_oracle.hpp"
#include "protocol_internal.hpp"

namespace compact_ilp {

std::size_t RWayCutLayout::length() const {
  return field_width(k + 1) + k * field_width(m) + field_width(k + 1) + k * field_width(2 * k + 1) +
         2 * k * field_width(n);
}

BitString encode(const RWayCutLayout& L, const RWayCutWitness& w) {
  std::size_t total = 0;
  for (const auto& g : w.groups) total += g.size();
  if (w.edges.size() > L.k || w.groups.size() > L.k || total > 2 * L.k)
    throw UsageError("r-way cut witness exceeds the slots of its layout");
  BitWriter out;
  out.put(w.edges.size(), field_width(L.k + 1));
  for (std::size_t i = 0; i < L.k; ++i) out.put(i < w.edges.size() ? w.edges[i] : 0, field_width(L.m));
  out.put(w.groups.size(), field_width(L.k + 1));
  for (std::size_t i = 0; i < L.k; ++i) out.put(i < w.groups.size() ? w.groups[i].size() : 0, field_width(2 * L.k + 1));
  std::vector<std::size_t> flat;
  for (const auto& g : w.groups) flat.insert(flat.end(), g.begin(), g.end());
  for (std::size_t i = 0; i < 2 * L.k; ++i) out.put(i < flat.size() ? flat[i] : 0, field_width(L.n));
  return out.finish();
}

Decoded<RWayCutWitness> decode(const RWayCutLayout& L, const BitString& bits) {
  detail::require_length(bits, L.length());
  BitReader in(bits);
  std::uint64_t steps = 0;
  RWayCutWitness w;
  const std::size_t x = in.get(field_width(L.k + 1));
  ++steps;
  if (x > L.k) return detail::decode_fail<RWayCutWitness>("edge-count-exceeds-k", steps);
  for (std::size_t i = 0; i < L.k; ++i) {
    const std::size_t e = in.get(field_width(L.m));
    ++steps;
    if (i < x) {
      if (e >= L.m) return detail::decode_fail<RWayCutWitness>("edge-index-out-of-range", steps);
      w.edges.push_back(e);
    } else if (e != 0) {
      return detail::decode_fail<RWayCutWitness>("unused-edge-slot-nonzero", steps);
    }
  }
  const std::size_t t = in.get(field_width(L.k + 1));
  ++steps;
  if (t > L.k) return detail::decode_fail<RWayCutWitness>("group-count-exceeds-k", steps);
  std::vector<std::size_t> sizes;
  std::size_t total = 0;
  for (std::size_t i = 0; i < L.k; ++i) {
    const std::size_t s = in.get(field_width(2 * L.k + 1));
    ++steps;
    if (i < t) {
      if (s == 0) return detail::decode_fail<RWayCutWitness>("empty-group", steps);
      sizes.push_back(s);
      total += s;
    } else if (s != 0) {
      return detail::decode_fail<RWayCutWitness>("unused-group-slot-nonzero", steps);
    }
  }
  if (total > 2 * L.k) return detail::decode_fail<RWayCutWitness>("group-vertices-exceed-2k", steps);
  std::vector<std::size_t> flat;
  for (std::size_t i = 0; i < 2 * L.k; ++i) {
    const std::size_t v = in.get(field_width(L.n));
    ++steps;
    if (i < total) {
      if (v >= L.n) return detail::decode_fail<RWayCutWitness>("vertex-out-of-range", steps);
      flat.push_back(v);
    } else if (v != 0) {
      return detail::decode_fail<RWayCutWitness>("unused-vertex-slot-nonzero", steps);
    }
  }
  std::size_t at = 0;
  for (auto s : sizes) {
    w.groups.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(at), flat.begin() + static_cast<std::ptrdiff_t>(at + s));
    at += s;
  }
  Decoded<RWayCutWitness> d;
  d.value = std::move(w);
  d.steps = steps;
  return d;
}

namespace {

constexpr const char* kTag = "rwaycut-advice";

class RWayCutVerifier final : public Verifier {
 public:
  explicit RWayCutVerifier(std::string_view advice) {
    BlobReader in(advice, kTag, 1);
    layout_.n = in.u64();
    layout_.m = in.u64();
    layout_.k = in.u64();
    r_ = in.u64();
    components_ = in.u64();
    early_no_ = in.boolean();
    const auto labels = in.u64_list();
    labels_.assign(labels.begin(), labels.end());
    oracle_ = FailureOracle::deserialize(in.section("oracle"));
    in.expect_end();
    if (labels_.size() != layout_.n || oracle_.num_vertices() != layout_.n || oracle_.d_max() != layout_.k ||
        oracle_.mode() != FailureMode::Edge)
      throw ParseError("r-way cut advice: inconsistent sizes");
  }

  std::size_t witness_length() const override { return layout_.length(); }

  VerifierReport verify(const BitString& bits) const override {
    detail::require_length(bits, witness_length());
    std::uint64_t steps = 1;
    if (early_no_) return finish(false, "components-plus-k-below-r", steps, bits, nullptr);
    auto decoded = decode(layout_, bits);
    steps += decoded.steps;
    if (!decoded.value) return finish(false, decoded.reason, steps, bits, nullptr);
    const RWayCutWitness& w = *decoded.value;

    for (std::size_t i = 0; i < w.edges.size(); ++i)
      for (std::size_t j = i + 1; j < w.edges.size(); ++j) {
        ++steps;
        if (w.edges[i] == w.edges[j]) return finish(false, "repeated-edge", steps, bits, nullptr);
      }
    std::vector<std::size_t> flat;
    for (const auto& g : w.groups) flat.insert(flat.end(), g.begin(), g.end());
    for (std::size_t i = 0; i < flat.size(); ++i)
      for (std::size_t j = i + 1; j < flat.size(); ++j) {
        ++steps;
        if (flat[i] == flat[j]) return finish(false, "repeated-vertex", steps, bits, nullptr);
      }
    for (const auto& g : w.groups)
      for (auto v : g) {
        ++steps;
        if (labels_[v] != labels_[g.front()]) return finish(false, "group-spans-components", steps, bits, nullptr);
      }
    for (std::size_t i = 0; i < w.groups.size(); ++i)
      for (std::size_t j = i + 1; j < w.groups.size(); ++j) {
        ++steps;
        if (labels_[w.groups[i].front()] == labels_[w.groups[j].front()])
          return finish(false, "groups-share-component", steps, bits, nullptr);
      }
    std::size_t gained = 0;
    for (const auto& g : w.groups) gained += g.size() - 1;
    const std::size_t target = r_ > components_ ? r_ - components_ : 0;
    steps += w.groups.size() + 1;
    if (gained != target) return finish(false, "group-sum-mismatch", steps, bits, nullptr);

    FailureOracle oracle = oracle_;
    oracle.update(w.edges);
    for (const auto& g : w.groups)
      for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) {
          ++steps;
          if (oracle.query(g[i], g[j])) return finish(false, "group-pair-connected", steps, bits, &oracle);
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

  RWayCutLayout layout_;
  std::size_t r_ = 0;
  std::size_t components_ = 0;
  bool early_no_ = false;
  std::vector<std::size_t> labels_;
  FailureOracle oracle_;
};

class RWayCutProtocol final : public Protocol {
 public:
  Variant variant() const override { return Variant::RWayCut; }

  Preprocessed preprocess(const ProblemInstance& inst) const override {
    const auto& in = detail::expect_instance<RWayCutInstance>(inst, "r-way cut");
    validate_instance(inst);
    const auto layout = RWayCutLayout::of(in);
    const std::size_t comps = in.graph.num_components();
    BlobWriter out(kTag, 1);
    out.u64(layout.n);
    out.u64(layout.m);
    out.u64(layout.k);
    out.u64(in.r);
    out.u64(comps);
    out.boolean(comps + in.k < in.r);
    const auto labels = in.graph.component_labels();
    out.u64_list(std::vector<std::uint64_t>(labels.begin(), labels.end()));
    out.section("oracle", FailureOracle::build(in.graph, FailureMode::Edge, in.k).serialize());
    return {out.take(), layout.length()};
  }

  std::unique_ptr<Verifier> load(std::string_view advice) const override {
    return std::make_unique<RWayCutVerifier>(advice);
  }

  std::size_t length_formula(const ProblemInstance& inst) const override {
    const auto& in = detail::expect_instance<RWayCutInstance>(inst, "r-way cut");
    const std::size_t k = in.k, n = in.graph.num_vertices(), m = in.graph.num_edges();
    return 2 * ceil_log2(k + 1) + k * ceil_log2(m) + k * ceil_log2(2 * k + 1) + 2 * k * ceil_log2(n);
  }

  std::uint64_t call_budget(const ProblemInstance& inst) const override {
    const auto& in = detail::expect_instance<RWayCutInstance>(inst, "r-way cut");
    return 1 + detail::choose2(2 * in.k);
  }

  std::size_t parameter(const ProblemInstance& inst) const override {
    return detail::expect_instance<RWayCutInstance>(inst, "r-way cut").k;
  }

  std::string length_formula_text() const override {
    return "2*ceil(log2(k+1)) + k*ceil(log2|E|) + k*ceil(log2(2k+1)) + 2k*ceil(log2 n)";
  }
  std::string call_budget_text() const override { return "1 + C(2k,2)"; }
};

}  // namespace

std::unique_ptr<Protocol> rwaycut_protocol() { return std::make_unique<RWayCutProtocol>(); }

}  // namespace compact_ilp
