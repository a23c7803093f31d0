#pragma once

#include <string>

#include "compact_ilp/errors.hpp"
#include "compact_ilp/protocols.hpp"

namespace compact_ilp::detail {

inline std::uint64_t choose2(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

inline void require_length(const BitString& bits, std::size_t ell) {
  if (bits.size() != ell)
    throw UsageError("witness has " + std::to_string(bits.size()) + " bits, the protocol expects " +
                     std::to_string(ell));
}

/// Builds a report; the caller adds structure calls and steps.
inline VerifierReport report(bool accept, std::string reason, std::uint64_t steps, std::size_t bits) {
  VerifierReport r;
  r.accept = accept;
  r.reason = std::move(reason);
  r.steps = steps;
  r.witness_bits = bits;
  return r;
}

template <typename T>
Decoded<T> decode_fail(std::string reason, std::uint64_t steps) {
  Decoded<T> d;
  d.reason = std::move(reason);
  d.steps = steps;
  return d;
}

template <typename Instance>
const Instance& expect_instance(const ProblemInstance& inst, const char* protocol) {
  if (const auto* p = std::get_if<Instance>(&inst)) return *p;
  throw UsageError(std::string(protocol) + " protocol given a " + variant_name(variant_of(inst)) + " instance");
}

}  // namespace compact_ilp::detail
