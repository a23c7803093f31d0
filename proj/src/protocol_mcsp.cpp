#include "compact_ilp/blob.hpp"
#include "compact_ilp/string_store.hpp"
#include "protocol_internal.hpp"

namespace compact_ilp {

std::size_t McspLayout::length() const { return k * field_width(n + 1) + k * field_width(k); }

BitString encode(const McspLayout& L, const McspWitness& w) {
  if (w.cuts.size() != L.k || w.f.size() != L.k) throw UsageError("mcsp witness needs exactly k cuts and k entries of f");
  BitWriter out;
  for (auto c : w.cuts) out.put(c, field_width(L.n + 1));
  for (auto v : w.f) out.put(v, field_width(L.k));
  return out.finish();
}

Decoded<McspWitness> decode(const McspLayout& L, const BitString& bits) {
  detail::require_length(bits, L.length());
  BitReader in(bits);
  std::uint64_t steps = 0;
  McspWitness w;
  for (std::size_t i = 0; i < L.k; ++i) {
    const std::size_t c = in.get(field_width(L.n + 1));
    steps += 2;
    if (c > L.n) return detail::decode_fail<McspWitness>("cut-out-of-range", steps);
    if (i > 0 && c < w.cuts.back()) return detail::decode_fail<McspWitness>("cuts-not-monotone", steps);
    w.cuts.push_back(c);
  }
  ++steps;
  if (L.k > 0 && w.cuts.back() != L.n) return detail::decode_fail<McspWitness>("last-cut-not-n", steps);
  std::vector<bool> seen(L.k);
  for (std::size_t i = 0; i < L.k; ++i) {
    const std::size_t v = in.get(field_width(L.k));
    steps += 2;
    if (v >= L.k || seen[v]) return detail::decode_fail<McspWitness>("f-not-a-permutation", steps);
    seen[v] = true;
    w.f.push_back(v);
  }
  Decoded<McspWitness> d;
  d.value = std::move(w);
  d.steps = steps;
  return d;
}

namespace {

constexpr const char* kTag = "mcsp-advice";

class McspVerifier final : public Verifier {
 public:
  explicit McspVerifier(std::string_view advice) {
    BlobReader in(advice, kTag, 1);
    layout_.n = in.u64();
    layout_.k = in.u64();
    hx_ = static_cast<StringHandle>(in.u64());
    hy_ = static_cast<StringHandle>(in.u64());
    store_ = StringStore::deserialize(in.section("store"));
    in.expect_end();
    if (hx_ >= store_.size() || hy_ >= store_.size() || store_.length(hx_) != layout_.n ||
        store_.length(hy_) != layout_.n || layout_.k == 0)
      throw ParseError("mcsp advice: inconsistent handles");
  }

  std::size_t witness_length() const override { return layout_.length(); }

  VerifierReport verify(const BitString& bits) const override {
    detail::require_length(bits, witness_length());
    auto decoded = decode(layout_, bits);
    std::uint64_t steps = decoded.steps;
    if (!decoded.value) return finish(false, decoded.reason, steps, bits, nullptr);
    const McspWitness& w = *decoded.value;
    StringStore store = store_;
    std::vector<StringHandle> pieces;
    StringHandle rest = hx_;
    std::size_t prev = 0;
    for (auto c : w.cuts) {
      auto [piece, tail] = store.split(rest, c - prev);
      pieces.push_back(piece);
      rest = tail;
      prev = c;
      steps += 2;
    }
    std::vector<std::size_t> inverse(layout_.k);
    for (std::size_t i = 0; i < layout_.k; ++i) inverse[w.f[i]] = i;
    steps += layout_.k;
    StringHandle y = store.empty();
    for (std::size_t j = 0; j < layout_.k; ++j) {
      y = store.concat(y, pieces[inverse[j]]);
      ++steps;
    }
    const bool same = store.equal(y, hy_);
    ++steps;
    return finish(same, same ? "" : "blocks-do-not-spell-y", steps, bits, &store);
  }

 private:
  static VerifierReport finish(bool accept, std::string reason, std::uint64_t steps, const BitString& bits,
                               const StringStore* store) {
    VerifierReport r = detail::report(accept, std::move(reason), steps, bits.size());
    r.calls["string-store"] = store ? store->counters().operations() : 0;
    if (store) r.steps += store->counters().steps;
    return r;
  }

  McspLayout layout_;
  StringHandle hx_ = 0, hy_ = 0;
  StringStore store_;
};

class McspProtocol final : public Protocol {
 public:
  Variant variant() const override { return Variant::Mcsp; }

  Preprocessed preprocess(const ProblemInstance& inst) const override {
    const auto& in = detail::expect_instance<McspInstance>(inst, "mcsp");
    validate_instance(inst);
    StringStore store;
    const StringHandle hx = store.build(in.x);
    const StringHandle hy = store.build(in.y);
    BlobWriter out(kTag, 1);
    out.u64(in.x.size());
    out.u64(in.k);
    out.u64(hx);
    out.u64(hy);
    out.section("store", store.serialize());
    return {out.take(), McspLayout::of(in).length()};
  }

  std::unique_ptr<Verifier> load(std::string_view advice) const override { return std::make_unique<McspVerifier>(advice); }

  std::size_t length_formula(const ProblemInstance& inst) const override {
    const auto& in = detail::expect_instance<McspInstance>(inst, "mcsp");
    return in.k * ceil_log2(in.x.size() + 1) + in.k * ceil_log2(in.k);
  }

  std::uint64_t call_budget(const ProblemInstance& inst) const override {
    return 2 * detail::expect_instance<McspInstance>(inst, "mcsp").k + 1;
  }

  std::size_t parameter(const ProblemInstance& inst) const override {
    return detail::expect_instance<McspInstance>(inst, "mcsp").k;
  }

  std::string length_formula_text() const override { return "k*ceil(log2(n+1)) + k*ceil(log2 k)"; }
  std::string call_budget_text() const override { return "2k + 1"; }
};

}  // namespace

std::unique_ptr<Protocol> mcsp_protocol() { return std::make_unique<McspProtocol>(); }

}  // namespace compact_ilp
