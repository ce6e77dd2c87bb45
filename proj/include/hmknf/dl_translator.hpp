#pragma once

// Translation of the supported Horn DL fragment into MKNF rules.
//
// Supported:
//   subclass(A, B)                       B(X) <- A(X)
//   subclass(and(C1..Cn), B)             B(X) <- body(C1), ..., body(Cn)
//        body(A) = A(X), body(some(R, A)) = R(X, Yi), A(Yi)
//   subclass(and(A1..An), bot), n >= 2   -Ai(X) <- A1(X), ..(skip i).., An(X)
//   equiv(A, B)                          A(X) <- B(X)  and  B(X) <- A(X)
//   subrole(R, S)                        S(X, Y) <- R(X, Y)
//   transitive(R)                        R(X, Z) <- R(X, Y), R(Y, Z)
//   assertions                           ground facts
//
// A classically negated head in a disjointness rule stands for the
// N-predicate of that concept.  Everything else is reported as unsupported.

#include <set>
#include <string>
#include <vector>

#include "hmknf/kb.hpp"

namespace hmknf {

struct UnsupportedAxiom {
    std::size_t index = 0;  // position in the input axiom list
    DlAxiom axiom;
    std::string reason;
};

struct TranslationResult {
    /// Definite rules and facts, paired with the index of the source axiom.
    std::vector<MknfRule> rules;
    std::vector<std::size_t> rule_axiom;
    /// Rules with a negated head, one per conjunct of each disjointness axiom.
    std::vector<MknfRule> negation_rules;
    std::vector<std::size_t> negation_rule_axiom;
    std::set<std::string> dl_predicates;
    std::vector<UnsupportedAxiom> unsupported;
};

TranslationResult translate_ontology(const std::vector<DlAxiom>& axioms);

/// Rules for one axiom, in emission order, or the reason it is unsupported.
/// translate_ontology is this applied to every axiom in order.
struct AxiomTranslation {
    std::vector<MknfRule> rules;
    std::vector<MknfRule> negation_rules;
    std::string unsupported_reason;  // empty when supported

    bool supported() const { return unsupported_reason.empty(); }
};

AxiomTranslation translate_axiom(const DlAxiom& axiom);

}  // namespace hmknf
