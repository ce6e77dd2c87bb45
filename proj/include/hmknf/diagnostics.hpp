#pragma once

#include <string>
#include <vector>

#include "hmknf/kb.hpp"

namespace hmknf {

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string message;
    SourcePos pos;

    friend bool operator==(const Diagnostic& a, const Diagnostic& b) {
        return a.severity == b.severity && a.message == b.message && a.pos.line == b.pos.line &&
               a.pos.column == b.pos.column;
    }
};

/// Checks every knowledge-base invariant: fixed arity per predicate, range
/// restriction of rules and constraints, reserved-name collisions with
/// generated primed predicates, and ontology-side shape constraints.  Returns
/// warnings for predicates that are used but never defined.
std::vector<Diagnostic> validate(const KnowledgeBase& kb);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// "line:col: error: message"
std::string format(const Diagnostic& d);

}  // namespace hmknf
