#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "compact_ilp/exact.hpp"
#include "compact_ilp/generate.hpp"

namespace compact_ilp {

struct CorpusEntry {
  GenSpec spec;
  bool expected = false;
  std::string provenance;  // how the expected verdict was obtained
};

/// Manifest: a JSON list of {"spec": {...}, "expected": "yes"|"no", "provenance": "..."}.
std::vector<CorpusEntry> parse_manifest(std::string_view text);
std::string write_manifest(const std::vector<CorpusEntry>& entries);

/// "<variant>/<mode>", the unit of per-family pass counts.
std::string family_of(const GenSpec& spec);

/// The shipped corpus: every variant in all three generator modes at sizes
/// where protocol enumeration stays within `max_ell` bits.
std::vector<CorpusEntry> default_corpus(std::size_t max_ell = 20);

struct CheckOptions {
  ExactGuards guards;
  std::size_t max_ell = 24;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct FamilyCount {
  std::size_t passed = 0;
  std::size_t failed = 0;
};

struct CheckSummary {
  std::map<std::string, FamilyCount> families;
  std::vector<std::string> failures;  // one line per failed entry, naming it
  std::size_t total() const;
  bool ok() const { return failures.empty(); }
};

/// Runs the cross-module contract on every entry: the expected verdict, the
/// generator mode, protocol enumeration and (for set cover and weighted vertex
/// cover) program feasibility must all agree with decide_exact.
CheckSummary run_check(const std::vector<CorpusEntry>& entries, const CheckOptions& options = {});

/// Program feasibility for the two modeled problems, decided by the brute
/// force and MILP engines; nullopt for other variants.
std::optional<bool> modeled_feasibility(const ProblemInstance& inst);

}  // namespace compact_ilp
