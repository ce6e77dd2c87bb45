#include "hmknf/dl_translator.hpp"

namespace hmknf {

namespace {

Atom unary(const std::string& p, const std::string& var) {
    return Atom{p, {Term::variable(var)}, {}};
}

Atom binary(const std::string& p, const std::string& v1, const std::string& v2) {
    return Atom{p, {Term::variable(v1), Term::variable(v2)}, {}};
}

Literal pos(Atom a) { return Literal{std::move(a), false}; }

MknfRule make_rule(Literal head, std::vector<Literal> body, SourcePos at) {
    MknfRule r;
    r.head = std::move(head);
    r.positive_body = std::move(body);
    r.pos = at;
    return r;
}

std::string conjunct_problem(const ConceptConjunct& c) {
    switch (c.kind) {
        case ConceptConjunct::Kind::Atomic:
        case ConceptConjunct::Kind::Exists: return {};
        case ConceptConjunct::Kind::Forall: return "non-Horn: universal restriction";
        case ConceptConjunct::Kind::Other: return "unsupported constructor: " + c.concept_name;
    }
    return "unsupported construct";
}

AxiomTranslation subclass(const SubClass& sc, SourcePos at) {
    AxiomTranslation out;
    for (const auto& c : sc.lhs) {
        if (auto p = conjunct_problem(c); !p.empty()) {
            out.unsupported_reason = p;
            return out;
        }
    }

    if (sc.is_disjointness()) {
        for (const auto& c : sc.lhs) {
            if (c.kind != ConceptConjunct::Kind::Atomic) {
                out.unsupported_reason = "disjointness over non-atomic conjuncts";
                return out;
            }
        }
        if (sc.lhs.size() < 2) {
            out.unsupported_reason = "unsatisfiable concept (single-conjunct disjointness)";
            return out;
        }
        for (std::size_t i = 0; i < sc.lhs.size(); ++i) {
            std::vector<Literal> body;
            for (std::size_t j = 0; j < sc.lhs.size(); ++j) {
                if (j != i) body.push_back(pos(unary(sc.lhs[j].concept_name, "X")));
            }
            out.negation_rules.push_back(
                make_rule(Literal{unary(sc.lhs[i].concept_name, "X"), true}, std::move(body), at));
        }
        return out;
    }

    switch (sc.rhs->kind) {
        case ConceptConjunct::Kind::Atomic: break;
        case ConceptConjunct::Kind::Exists:
            out.unsupported_reason = "existential restriction on the right-hand side";
            return out;
        case ConceptConjunct::Kind::Forall:
            out.unsupported_reason = "non-Horn: universal restriction";
            return out;
        case ConceptConjunct::Kind::Other:
            out.unsupported_reason = "unsupported constructor: " + sc.rhs->concept_name;
            return out;
    }

    std::vector<Literal> body;
    std::size_t fresh = 0;
    for (const auto& c : sc.lhs) {
        if (c.kind == ConceptConjunct::Kind::Atomic) {
            body.push_back(pos(unary(c.concept_name, "X")));
        } else {
            std::string y = "Y" + std::to_string(++fresh);
            body.push_back(pos(binary(c.role, "X", y)));
            body.push_back(pos(unary(c.concept_name, y)));
        }
    }
    out.rules.push_back(make_rule(pos(unary(sc.rhs->concept_name, "X")), std::move(body), at));
    return out;
}

}  // namespace

AxiomTranslation translate_axiom(const DlAxiom& axiom) {
    struct Visitor {
        SourcePos at;
        AxiomTranslation operator()(const SubClass& sc) const { return subclass(sc, at); }
        AxiomTranslation operator()(const Equivalence& e) const {
            AxiomTranslation out;
            out.rules.push_back(make_rule(pos(unary(e.first, "X")), {pos(unary(e.second, "X"))}, at));
            out.rules.push_back(make_rule(pos(unary(e.second, "X")), {pos(unary(e.first, "X"))}, at));
            return out;
        }
        AxiomTranslation operator()(const SubRole& s) const {
            AxiomTranslation out;
            out.rules.push_back(
                make_rule(pos(binary(s.super, "X", "Y")), {pos(binary(s.sub, "X", "Y"))}, at));
            return out;
        }
        AxiomTranslation operator()(const Transitive& t) const {
            AxiomTranslation out;
            out.rules.push_back(make_rule(pos(binary(t.role, "X", "Z")),
                                          {pos(binary(t.role, "X", "Y")), pos(binary(t.role, "Y", "Z"))},
                                          at));
            return out;
        }
        AxiomTranslation operator()(const ConceptAssertion& a) const {
            AxiomTranslation out;
            out.rules.push_back(
                make_rule(pos(Atom{a.concept_name, {Term::constant(a.individual)}, at}), {}, at));
            return out;
        }
        AxiomTranslation operator()(const RoleAssertion& a) const {
            AxiomTranslation out;
            out.rules.push_back(make_rule(
                pos(Atom{a.role, {Term::constant(a.subject), Term::constant(a.object)}, at}), {}, at));
            return out;
        }
    };
    return std::visit(Visitor{axiom.pos}, axiom.body);
}

TranslationResult translate_ontology(const std::vector<DlAxiom>& axioms) {
    TranslationResult result;
    for (std::size_t i = 0; i < axioms.size(); ++i) {
        AxiomTranslation t = translate_axiom(axioms[i]);
        if (!t.supported()) {
            result.unsupported.push_back({i, axioms[i], std::move(t.unsupported_reason)});
            continue;
        }
        auto note = [&](const MknfRule& r) {
            result.dl_predicates.insert(r.head.atom.predicate);
            for (const auto& l : r.positive_body) result.dl_predicates.insert(l.atom.predicate);
        };
        for (auto& r : t.rules) {
            note(r);
            result.rules.push_back(std::move(r));
            result.rule_axiom.push_back(i);
        }
        for (auto& r : t.negation_rules) {
            note(r);
            result.negation_rules.push_back(std::move(r));
            result.negation_rule_axiom.push_back(i);
        }
    }
    return result;
}

}  // namespace hmknf
