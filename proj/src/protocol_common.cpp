#include "compact_ilp/generate.hpp"
#include "protocol_internal.hpp"

namespace compact_ilp {

std::uint64_t VerifierReport::total_calls() const {
  std::uint64_t total = 0;
  for (const auto& [name, count] : calls) total += count;
  return total;
}

nlohmann::ordered_json VerifierReport::to_json() const {
  nlohmann::ordered_json j;
  j["verdict"] = accept ? "accept" : "reject";
  j["reason"] = accept ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(reason);
  j["steps"] = steps;
  nlohmann::ordered_json c = nlohmann::ordered_json::object();
  for (const auto& [name, count] : calls) c[name] = count;
  j["calls"] = c;
  j["total_calls"] = total_calls();
  j["witness_bits"] = witness_bits;
  return j;
}

bool has_protocol(Variant v) { return v != Variant::SetCover && v != Variant::Wvc; }

std::unique_ptr<Protocol> make_protocol(Variant v) {
  switch (v) {
    case Variant::RWayCut:
      return rwaycut_protocol();
    case Variant::MultiwayCut:
      return multiwaycut_protocol();
    case Variant::Mcsp:
      return mcsp_protocol();
    case Variant::LongPath:
      return longpath_protocol();
    case Variant::Steiner:
      return steiner_protocol();
    case Variant::Discretization:
      return discretization_protocol();
    default:
      throw UsageError("no witness verification protocol for " + variant_name(v));
  }
}

EnumerationResult enumerate_decide(const Protocol& p, const ProblemInstance& inst, std::size_t max_ell,
                                   std::optional<std::chrono::steady_clock::time_point> deadline) {
  const Preprocessed pre = p.preprocess(inst);
  if (pre.ell > max_ell || pre.ell >= 64)
    throw BudgetError(p.name() + ": witness length " + std::to_string(pre.ell) + " exceeds the enumeration guard " +
                      std::to_string(max_ell));
  const auto verifier = p.load(pre.advice);
  EnumerationResult out;
  out.ell = pre.ell;
  const std::uint64_t total = std::uint64_t{1} << pre.ell;
  for (std::uint64_t w = 0; w < total; ++w) {
    if (deadline && (w & 0xfff) == 0 && std::chrono::steady_clock::now() > *deadline)
      throw BudgetError(p.name() + ": enumeration exceeded the time budget");
    const BitString bits = BitString::from_index(w, pre.ell);
    ++out.evaluated;
    if (verifier->verify(bits).accept) {
      out.yes = true;
      out.witness = bits;
      break;
    }
  }
  return out;
}

nlohmann::ordered_json AuditReport::to_json() const {
  nlohmann::ordered_json j;
  j["protocol"] = protocol;
  j["n"] = n;
  j["k"] = k;
  j["ell"] = ell;
  j["steps"] = steps;
  j["calls"] = calls;
  return j;
}

AuditReport audit_costs(const Protocol& p, const ProblemInstance& inst, const std::vector<BitString>& extra,
                        std::size_t exhaustive_ell, std::size_t samples, std::uint64_t seed) {
  AuditReport a;
  a.protocol = p.name();
  a.n = instance_size(inst);
  a.k = p.parameter(inst);
  const Preprocessed pre = p.preprocess(inst);
  a.ell = pre.ell;
  a.ell_formula = p.length_formula(inst);
  a.call_budget = p.call_budget(inst);
  if (a.ell != a.ell_formula)
    a.failures.push_back(p.name() + ": witness length " + std::to_string(a.ell) + " differs from " +
                         p.length_formula_text() + " = " + std::to_string(a.ell_formula));
  const auto verifier = p.load(pre.advice);
  auto run = [&](const BitString& bits) {
    const VerifierReport r = verifier->verify(bits);
    ++a.witnesses;
    if (r.accept) ++a.accepted;
    a.steps = std::max(a.steps, r.steps);
    a.calls = std::max(a.calls, r.total_calls());
  };
  if (a.ell <= exhaustive_ell) {
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << a.ell); ++w) run(BitString::from_index(w, a.ell));
  } else {
    run(BitString(a.ell));
    SeededRng rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
      BitString bits(a.ell);
      for (std::size_t i = 0; i < a.ell; ++i) bits.set(i, rng.next() & 1u);
      run(bits);
    }
  }
  for (const auto& bits : extra) {
    if (bits.size() != a.ell) throw UsageError("audit witness has the wrong length");
    run(bits);
  }
  if (a.calls > a.call_budget)
    a.failures.push_back(p.name() + ": " + std::to_string(a.calls) + " structure calls exceed " +
                         p.call_budget_text() + " = " + std::to_string(a.call_budget));
  return a;
}

}  // namespace compact_ilp
