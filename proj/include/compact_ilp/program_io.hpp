#pragma once

#include <string>
#include <string_view>

#include "compact_ilp/integer_program.hpp"

namespace compact_ilp {

enum class ProgramFormat { CanonicalJson, LpText, MpsText };

ProgramFormat parse_program_format(std::string_view name);

struct ExportOptions {
  /// Enforce the 12-character numeric field of fixed-column MPS.
  bool strict_fixed_mps = false;
};

/// Width of a numeric field in fixed-column MPS (columns 25-36).
inline constexpr std::size_t kFixedMpsFieldWidth = 12;

std::string export_program(const IntegerProgram& p, ProgramFormat format,
                           const ExportOptions& options = {});

/// Parses and validates; throws ParseError or InvariantError.
IntegerProgram import_program(std::string_view bytes, ProgramFormat format);

}  // namespace compact_ilp
