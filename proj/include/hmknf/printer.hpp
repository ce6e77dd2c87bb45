#pragma once

#include <string>

#include "hmknf/kb.hpp"

namespace hmknf {

/// Constants that are not plain lowercase identifiers or integers are
/// printed quoted.
bool needs_quotes(const std::string& constant);

std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Literal& l);
std::string to_string(const MknfRule& r);
std::string to_string(const ConceptConjunct& c);
std::string to_string(const DlAxiom& a);
std::string to_string(const IntegrityConstraint& c);
std::string to_string(const ConjunctiveQuery& q);

/// Source text that parse_program reads back to an equal KnowledgeBase.
std::string to_string(const KnowledgeBase& kb);

}  // namespace hmknf
