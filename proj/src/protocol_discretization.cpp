#include <algorithm>

#include "compact_ilp/bad_tuples.hpp"
#include "compact_ilp/blob.hpp"
#include "protocol_internal.hpp"

namespace compact_ilp {

std::size_t DiscretizationLayout::length() const {
  return 2 * field_width(k + 1) + k * field_width(std::max(px, py));
}

std::vector<Rational> discretization_x_pool(const DiscretizationInstance& inst) {
  std::vector<Rational> xs;
  for (const auto* set : {&inst.w1, &inst.w2})
    for (const auto& p : *set) xs.push_back(p.x);
  return gap_pool(xs);
}

std::vector<Rational> discretization_y_pool(const DiscretizationInstance& inst) {
  std::vector<Rational> ys;
  for (const auto* set : {&inst.w1, &inst.w2})
    for (const auto& p : *set) ys.push_back(p.y);
  return gap_pool(ys);
}

DiscretizationLayout discretization_layout(const DiscretizationInstance& inst) {
  return {discretization_x_pool(inst).size(), discretization_y_pool(inst).size(), inst.k};
}

BitString encode(const DiscretizationLayout& L, const DiscretizationWitness& w) {
  if (w.xs.size() + w.ys.size() > L.k) throw UsageError("discretization witness has more than k lines");
  const std::size_t width = field_width(std::max(L.px, L.py));
  BitWriter out;
  out.put(w.xs.size(), field_width(L.k + 1));
  out.put(w.ys.size(), field_width(L.k + 1));
  std::vector<std::size_t> slots = w.xs;
  slots.insert(slots.end(), w.ys.begin(), w.ys.end());
  for (std::size_t i = 0; i < L.k; ++i) out.put(i < slots.size() ? slots[i] : 0, width);
  return out.finish();
}

Decoded<DiscretizationWitness> decode(const DiscretizationLayout& L, const BitString& bits) {
  detail::require_length(bits, L.length());
  BitReader in(bits);
  std::uint64_t steps = 3;
  const std::size_t nx = in.get(field_width(L.k + 1));
  const std::size_t ny = in.get(field_width(L.k + 1));
  if (nx + ny > L.k) return detail::decode_fail<DiscretizationWitness>("line-count-exceeds-k", steps);
  const std::size_t width = field_width(std::max(L.px, L.py));
  DiscretizationWitness w;
  for (std::size_t i = 0; i < L.k; ++i) {
    const std::size_t v = in.get(width);
    steps += 2;
    if (i < nx + ny) {
      auto& axis = i < nx ? w.xs : w.ys;
      const std::size_t pool = i < nx ? L.px : L.py;
      if (v >= pool) return detail::decode_fail<DiscretizationWitness>("pool-index-out-of-range", steps);
      if (!axis.empty() && v <= axis.back())
        return detail::decode_fail<DiscretizationWitness>("indices-not-increasing", steps);
      axis.push_back(v);
    } else if (v != 0) {
      return detail::decode_fail<DiscretizationWitness>("unused-index-slot-nonzero", steps);
    }
  }
  Decoded<DiscretizationWitness> d;
  d.value = std::move(w);
  d.steps = steps;
  return d;
}

namespace {

constexpr const char* kTag = "discretization-advice";

class DiscretizationVerifier final : public Verifier {
 public:
  explicit DiscretizationVerifier(std::string_view advice) {
    BlobReader in(advice, kTag, 1);
    layout_.k = in.u64();
    index_ = BadTupleIndex::deserialize(in.section("index"));
    in.expect_end();
    layout_.px = index_.x_pool().size();
    layout_.py = index_.y_pool().size();
  }

  std::size_t witness_length() const override { return layout_.length(); }

  VerifierReport verify(const BitString& bits) const override {
    detail::require_length(bits, witness_length());
    auto decoded = decode(layout_, bits);
    std::uint64_t steps = decoded.steps;
    BadTupleCounters counters;
    auto finish = [&](bool accept, std::string reason) {
      VerifierReport r = detail::report(accept, std::move(reason), steps + counters.steps, bits.size());
      r.calls["bad-tuple-index"] = counters.lookups;
      return r;
    };
    if (!decoded.value) return finish(false, decoded.reason);
    auto extended = [&](const std::vector<std::size_t>& chosen, std::size_t pool) {
      std::vector<std::uint32_t> pos{0};
      for (auto i : chosen) pos.push_back(static_cast<std::uint32_t>(i + 1));
      pos.push_back(static_cast<std::uint32_t>(pool + 1));
      steps += pos.size();
      return pos;
    };
    const auto xs = extended(decoded.value->xs, layout_.px);
    const auto ys = extended(decoded.value->ys, layout_.py);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
      for (std::size_t j = 0; j + 1 < ys.size(); ++j)
        if (index_.lookup({xs[i], xs[i + 1], ys[j], ys[j + 1]}, counters)) return finish(false, "box-mixes-colors");
    return finish(true, "");
  }

 private:
  DiscretizationLayout layout_;
  BadTupleIndex index_;
};

const DiscretizationInstance& as_discretization(const ProblemInstance& inst) {
  return detail::expect_instance<DiscretizationInstance>(inst, "discretization");
}

class DiscretizationProtocol final : public Protocol {
 public:
  Variant variant() const override { return Variant::Discretization; }

  Preprocessed preprocess(const ProblemInstance& inst) const override {
    const auto& in = as_discretization(inst);
    validate_instance(inst);
    auto index = BadTupleIndex::build(in.w1, in.w2, discretization_x_pool(in), discretization_y_pool(in));
    BlobWriter out(kTag, 1);
    out.u64(in.k);
    out.section("index", index.serialize());
    return {out.take(), discretization_layout(in).length()};
  }

  std::unique_ptr<Verifier> load(std::string_view advice) const override {
    return std::make_unique<DiscretizationVerifier>(advice);
  }

  std::size_t length_formula(const ProblemInstance& inst) const override {
    const auto& in = as_discretization(inst);
    const auto L = discretization_layout(in);
    return 2 * ceil_log2(in.k + 1) + in.k * ceil_log2(std::max(L.px, L.py));
  }

  std::uint64_t call_budget(const ProblemInstance& inst) const override {
    const std::uint64_t k = as_discretization(inst).k;
    return (k + 2) * (k + 2) / 4;
  }

  std::size_t parameter(const ProblemInstance& inst) const override { return as_discretization(inst).k; }

  std::string length_formula_text() const override {
    return "2*ceil(log2(k+1)) + k*ceil(log2 max(|hX|,|hY|))";
  }
  std::string call_budget_text() const override { return "floor((k+2)^2/4)"; }
};

}  // namespace

std::unique_ptr<Protocol> discretization_protocol() { return std::make_unique<DiscretizationProtocol>(); }

}  // namespace compact_ilp
