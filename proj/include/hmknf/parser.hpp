#pragma once

#include <string_view>

#include "hmknf/kb.hpp"

namespace hmknf {

/// Parses a knowledge-base file (`#ontology` / `#rules` / `#constraints`
/// sections) and validates it.  Throws ParseError on malformed text and
/// ValidationError when validate() reports errors.
KnowledgeBase parse_program(std::string_view text);

/// Syntax-only variant of parse_program; the caller is responsible for
/// running validate().
KnowledgeBase parse_program_unchecked(std::string_view text);

/// Parses `A1, ..., not B1, ...` (optionally terminated by `.`).  Answer
/// variables are all variables in order of first occurrence.  Throws
/// ParseError on syntax errors, unsafe queries and classical negation.
ConjunctiveQuery parse_query(std::string_view text);

}  // namespace hmknf
