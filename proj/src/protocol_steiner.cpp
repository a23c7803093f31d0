#include <deque>
#include <limits>
#include <numeric>

#include "compact_ilp/blob.hpp"
#include "protocol_internal.hpp"

namespace compact_ilp {

std::size_t SteinerLayout::length() const {
  if (t == 0) return 0;
  return field_width(t) + (t - 1) * field_width(n) + (2 * t - 2) * field_width(2 * t - 1);
}

BitString encode(const SteinerLayout& L, const SteinerWitness& w) {
  const std::size_t nodes = L.t + w.extra.size();
  if (L.t == 0 || w.extra.size() > L.t - 1 || w.parents.size() != nodes - 1)
    throw UsageError("steiner witness does not fit its layout");
  BitWriter out;
  out.put(w.extra.size(), field_width(L.t));
  for (std::size_t i = 0; i + 1 < L.t; ++i) out.put(i < w.extra.size() ? w.extra[i] : 0, field_width(L.n));
  for (std::size_t i = 0; i < 2 * L.t - 2; ++i)
    out.put(i < w.parents.size() ? w.parents[i] : 0, field_width(2 * L.t - 1));
  return out.finish();
}

Decoded<SteinerWitness> decode(const SteinerLayout& L, const BitString& bits) {
  detail::require_length(bits, L.length());
  if (L.t == 0) return detail::decode_fail<SteinerWitness>("no-terminals", 1);
  BitReader in(bits);
  std::uint64_t steps = 1;
  const std::size_t y = in.get(field_width(L.t));
  if (y > L.t - 1) return detail::decode_fail<SteinerWitness>("extra-count-exceeds-k-1", steps);
  SteinerWitness w;
  for (std::size_t i = 0; i + 1 < L.t; ++i) {
    const std::size_t v = in.get(field_width(L.n));
    ++steps;
    if (i < y) {
      if (v >= L.n) return detail::decode_fail<SteinerWitness>("vertex-out-of-range", steps);
      w.extra.push_back(v);
    } else if (v != 0) {
      return detail::decode_fail<SteinerWitness>("unused-vertex-slot-nonzero", steps);
    }
  }
  const std::size_t nodes = L.t + y;
  for (std::size_t i = 1; i <= 2 * L.t - 2; ++i) {
    const std::size_t p = in.get(field_width(2 * L.t - 1));
    ++steps;
    if (i < nodes) {
      if (p >= nodes || p == i) return detail::decode_fail<SteinerWitness>("parent-out-of-range", steps);
      w.parents.push_back(p);
    } else if (p != 0) {
      return detail::decode_fail<SteinerWitness>("unused-parent-slot-nonzero", steps);
    }
  }
  Decoded<SteinerWitness> d;
  d.value = std::move(w);
  d.steps = steps;
  return d;
}

namespace {

constexpr const char* kTag = "steiner-advice";
constexpr std::uint64_t kInfinite = std::numeric_limits<std::uint64_t>::max();

class SteinerVerifier final : public Verifier {
 public:
  explicit SteinerVerifier(std::string_view advice) {
    BlobReader in(advice, kTag, 1);
    layout_.n = in.u64();
    ell_ = in.u64();
    const auto t = in.u64_list();
    terminals_.assign(t.begin(), t.end());
    layout_.t = terminals_.size();
    dist_ = in.u64_list();
    in.expect_end();
    is_terminal_.assign(layout_.n, false);
    for (auto v : terminals_) {
      if (v >= layout_.n) throw ParseError("steiner advice: terminal out of range");
      is_terminal_[v] = true;
    }
    if (dist_.size() != layout_.n * layout_.n || terminals_.empty())
      throw ParseError("steiner advice: inconsistent sizes");
  }

  std::size_t witness_length() const override { return layout_.length(); }

  VerifierReport verify(const BitString& bits) const override {
    detail::require_length(bits, witness_length());
    auto decoded = decode(layout_, bits);
    std::uint64_t steps = decoded.steps;
    std::uint64_t lookups = 0;
    auto finish = [&](bool accept, std::string reason) {
      VerifierReport r = detail::report(accept, std::move(reason), steps + lookups, bits.size());
      r.calls["distance-matrix"] = lookups;
      return r;
    };
    if (!decoded.value) return finish(false, decoded.reason);
    const SteinerWitness& w = *decoded.value;
    for (std::size_t i = 0; i < w.extra.size(); ++i) {
      ++steps;
      if (is_terminal_[w.extra[i]]) return finish(false, "extra-vertex-is-terminal");
      for (std::size_t j = i + 1; j < w.extra.size(); ++j) {
        ++steps;
        if (w.extra[i] == w.extra[j]) return finish(false, "repeated-extra-vertex");
      }
    }
    std::vector<std::size_t> nodes = terminals_;
    nodes.insert(nodes.end(), w.extra.begin(), w.extra.end());
    std::vector<std::size_t> uf(nodes.size());
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](std::size_t v) {
      while (uf[v] != v) {
        ++steps;
        v = uf[v] = uf[uf[v]];
      }
      return v;
    };
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      const std::size_t a = find(i), b = find(w.parents[i - 1]);
      ++steps;
      if (a == b) return finish(false, "parent-cycle");
      uf[a] = b;
    }
    std::uint64_t total = 0;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      ++lookups;
      const std::uint64_t d = dist_[nodes[i] * layout_.n + nodes[w.parents[i - 1]]];
      ++steps;
      if (d == kInfinite) return finish(false, "unreachable-pair");
      total += d;
    }
    ++steps;
    if (total > ell_) return finish(false, "tree-too-long");
    return finish(true, "");
  }

 private:
  SteinerLayout layout_;
  std::uint64_t ell_ = 0;
  std::vector<std::size_t> terminals_;
  std::vector<bool> is_terminal_;
  std::vector<std::uint64_t> dist_;
};

const SteinerInstance& as_steiner(const ProblemInstance& inst) {
  return detail::expect_instance<SteinerInstance>(inst, "steiner");
}

class SteinerProtocol final : public Protocol {
 public:
  Variant variant() const override { return Variant::Steiner; }

  Preprocessed preprocess(const ProblemInstance& inst) const override {
    const auto& in = as_steiner(inst);
    validate_instance(inst);
    const Graph& g = in.graph;
    const std::size_t n = g.num_vertices();
    std::vector<std::uint64_t> dist(n * n, kInfinite);
    for (std::size_t s = 0; s < n; ++s) {
      std::deque<std::size_t> queue{s};
      dist[s * n + s] = 0;
      while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (auto w : g.neighbors(v))
          if (dist[s * n + w] == kInfinite) {
            dist[s * n + w] = dist[s * n + v] + 1;
            queue.push_back(w);
          }
      }
    }
    BlobWriter out(kTag, 1);
    out.u64(n);
    out.u64(in.ell);
    out.u64_list(std::vector<std::uint64_t>(in.terminals.begin(), in.terminals.end()));
    out.u64_list(dist);
    return {out.take(), SteinerLayout::of(in).length()};
  }

  std::unique_ptr<Verifier> load(std::string_view advice) const override {
    return std::make_unique<SteinerVerifier>(advice);
  }

  std::size_t length_formula(const ProblemInstance& inst) const override {
    const auto& in = as_steiner(inst);
    const std::size_t k = in.terminals.size(), n = in.graph.num_vertices();
    return ceil_log2(k) + (k - 1) * ceil_log2(n) + (2 * k - 2) * ceil_log2(2 * k - 1);
  }

  std::uint64_t call_budget(const ProblemInstance& inst) const override {
    return 2 * as_steiner(inst).terminals.size() - 2;
  }

  std::size_t parameter(const ProblemInstance& inst) const override { return as_steiner(inst).terminals.size(); }

  std::string length_formula_text() const override {
    return "ceil(log2 k) + (k-1)*ceil(log2 n) + (2k-2)*ceil(log2(2k-1)), k = |T|";
  }
  std::string call_budget_text() const override { return "2k - 2"; }
};

}  // namespace

std::unique_ptr<Protocol> steiner_protocol() { return std::make_unique<SteinerProtocol>(); }

}  // namespace compact_ilp
