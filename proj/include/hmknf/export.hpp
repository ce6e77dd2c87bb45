#pragma once

// Text forms of a compiled program.
//
// Both writers emit a `%` comment header carrying the symbol table, the rule
// origins and the unsupported axioms, so read_compiled restores the whole
// DoubledProgram.  The Prolog form targets tabled engines (XSB, SWI):
//
//   :- table aopnRwy/1.
//   aopnRwy(X):- arwy(X),anonob(A,X),tnot(dcldRwy(X)).

#include <string>
#include <string_view>

#include "hmknf/transform.hpp"

namespace hmknf {

enum class ExportFormat { Native, Prolog };

std::string write_native(const DoubledProgram& program);
std::string write_prolog(const DoubledProgram& program);
std::string write_compiled(const DoubledProgram& program, ExportFormat format);

/// Reads either format back.  Rules without header metadata get their level
/// from the head prefix and one origin each.  Throws ParseError.
DoubledProgram read_compiled(std::string_view text);

/// Prolog clause text of one rule.
std::string to_prolog(const ProgramRule& rule);

}  // namespace hmknf
