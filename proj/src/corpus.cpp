#include "compact_ilp/corpus.hpp"

#include "compact_ilp/errors.hpp"
#include "compact_ilp/modelers.hpp"
#include "compact_ilp/protocols.hpp"
#include "compact_ilp/solve.hpp"

namespace compact_ilp {

std::vector<CorpusEntry> parse_manifest(std::string_view text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("manifest must be a JSON list");
  std::vector<CorpusEntry> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    try {
      CorpusEntry e;
      e.spec = spec_from_json(item.at("spec"));
      const auto verdict = item.at("expected").get<std::string>();
      if (verdict != "yes" && verdict != "no") throw ParseError("expected must be \"yes\" or \"no\"");
      e.expected = verdict == "yes";
      if (item.contains("provenance")) e.provenance = item.at("provenance").get<std::string>();
      out.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError("manifest entry " + std::to_string(i) + ": " + ex.what());
    } catch (const ParseError& ex) {
      throw ParseError("manifest entry " + std::to_string(i) + ": " + ex.what());
    }
  }
  return out;
}

std::string write_manifest(const std::vector<CorpusEntry>& entries) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json item;
    item["spec"] = spec_to_json(e.spec);
    item["expected"] = e.expected ? "yes" : "no";
    item["provenance"] = e.provenance;
    doc.push_back(std::move(item));
  }
  return doc.dump(1) + "\n";
}

std::string family_of(const GenSpec& spec) { return variant_name(spec.variant) + "/" + gen_mode_name(spec.mode); }

namespace {

struct Shape {
  std::size_t size, param, extra;
  std::uint32_t density;
};

std::vector<Shape> shapes_for(Variant v) {
  std::vector<Shape> out;
  auto grid = [&](std::initializer_list<std::size_t> sizes, std::initializer_list<std::size_t> params,
                  std::size_t extra, std::uint32_t density) {
    for (auto s : sizes)
      for (auto p : params) out.push_back({s, p, extra, density});
  };
  switch (v) {
    case Variant::SetCover:
      grid({2, 3, 4, 5}, {1, 2, 3}, 5, 40);
      break;
    case Variant::Wvc:
      grid({3, 4, 5, 6}, {2, 4, 6}, 3, 50);
      break;
    case Variant::RWayCut:
      grid({3, 4, 5, 6}, {1, 2}, 2, 50);
      grid({5, 6}, {1, 2}, 3, 50);
      break;
    case Variant::MultiwayCut:
      grid({5, 6, 7, 8}, {1, 2, 3}, 3, 45);
      break;
    case Variant::Mcsp:
      grid({3, 4, 5, 6}, {1, 2, 3}, 2, 0);
      break;
    case Variant::LongPath:
      grid({3, 4, 5, 6, 7}, {3, 4, 5}, 0, 25);
      break;
    case Variant::Steiner:
      grid({5, 6, 7, 8}, {2, 3, 4}, 2, 35);
      grid({5, 6}, {2, 3}, 3, 35);
      break;
    case Variant::Discretization:
      grid({4, 6, 8}, {1, 2, 3}, 4, 0);
      break;
  }
  return out;
}

std::string describe(const GenSpec& spec) { return family_of(spec) + " " + spec_to_json(spec).dump(); }

}  // namespace

std::vector<CorpusEntry> default_corpus(std::size_t max_ell) {
  std::vector<CorpusEntry> out;
  const Variant variants[] = {Variant::SetCover, Variant::Wvc,      Variant::RWayCut, Variant::MultiwayCut,
                              Variant::Mcsp,     Variant::LongPath, Variant::Steiner, Variant::Discretization};
  std::uint64_t seed = 1000;
  for (auto v : variants) {
    for (auto mode : {GenMode::Random, GenMode::PlantedYes, GenMode::ForcedNo}) {
      for (const auto& shape : shapes_for(v)) {
        GenSpec spec{v, mode, shape.size, shape.param, shape.extra, shape.density, ++seed};
        const ProblemInstance inst = generate(spec);
        if (has_protocol(v) && make_protocol(v)->length_formula(inst) > max_ell) continue;
        CorpusEntry e;
        e.spec = spec;
        e.expected = decide_exact(inst);
        e.provenance = mode == GenMode::Random ? "decide_exact"
                       : mode == GenMode::PlantedYes ? "planted construction, confirmed by decide_exact"
                                                     : "forced-no construction, confirmed by decide_exact";
        out.push_back(std::move(e));
      }
    }
  }
  return out;
}

std::size_t CheckSummary::total() const {
  std::size_t t = 0;
  for (const auto& [name, c] : families) t += c.passed + c.failed;
  return t;
}

std::optional<bool> modeled_feasibility(const ProblemInstance& inst) {
  if (const auto* sc = std::get_if<SetCoverInstance>(&inst)) {
    const bool binary = brute_force_feasibility(set_cover_to_ilp(*sc, true), BigInt(1)).feasible();
    // Any solution of the general program clips to a 0/1 solution, so a unit box is exhaustive.
    const bool general = brute_force_feasibility(set_cover_to_ilp(*sc, false), BigInt(1)).feasible();
    if (binary != general) throw InvariantError("set cover: binary and general programs disagree");
    return binary;
  }
  if (const auto* w = std::get_if<WvcInstance>(&inst)) {
    const auto cover = vc_2approx(w->graph);
    const bool milp = milp_feasibility(wvc_to_milp(*w, cover)).feasible();
    const bool binary = brute_force_feasibility(wvc_to_binary_ilp(*w, cover), BigInt(1)).feasible();
    if (milp != binary) throw InvariantError("wvc: MILP and binary programs disagree");
    return milp;
  }
  return std::nullopt;
}

CheckSummary run_check(const std::vector<CorpusEntry>& entries, const CheckOptions& options) {
  CheckSummary summary;
  auto verdict = [](bool b) { return std::string(b ? "yes" : "no"); };
  for (const auto& entry : entries) {
    const std::string family = family_of(entry.spec);
    std::string problem;
    try {
      const ProblemInstance inst = generate(entry.spec);
      const bool exact = decide_exact(inst, options.guards);
      if (exact != entry.expected) {
        problem = "expected " + verdict(entry.expected) + ", decide_exact says " + verdict(exact);
      } else if (entry.spec.mode == GenMode::PlantedYes && !exact) {
        problem = "planted instance is a no-instance";
      } else if (entry.spec.mode == GenMode::ForcedNo && exact) {
        problem = "forced-no instance is a yes-instance";
      } else if (has_protocol(entry.spec.variant)) {
        const auto p = make_protocol(entry.spec.variant);
        const auto e = enumerate_decide(*p, inst, options.max_ell, options.deadline);
        if (e.yes != exact) problem = "protocol enumeration says " + verdict(e.yes) + ", decide_exact says " + verdict(exact);
      } else if (const auto modeled = modeled_feasibility(inst); modeled && *modeled != exact) {
        problem = "program feasibility says " + verdict(*modeled) + ", decide_exact says " + verdict(exact);
      }
    } catch (const BudgetError&) {
      throw;
    } catch (const Error& e) {
      problem = std::string("error: ") + e.what();
    }
    auto& count = summary.families[family];
    if (problem.empty()) {
      ++count.passed;
    } else {
      ++count.failed;
      summary.failures.push_back(describe(entry.spec) + ": " + problem);
    }
  }
  return summary;
}

}  // namespace compact_ilp
