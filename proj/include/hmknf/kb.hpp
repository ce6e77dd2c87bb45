#pragma once

// Domain model for Hybrid MKNF knowledge bases: terms, atoms, rules,
// ontology axioms and integrity constraints.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hmknf {

/// 1-based line/column of a construct in its source text; {0, 0} when the
/// item was built programmatically.
struct SourcePos {
    std::size_t line = 0;
    std::size_t column = 0;
};

struct Term {
    enum class Kind { Constant, Variable };

    Kind kind = Kind::Constant;
    std::string name;

    static Term constant(std::string name) { return {Kind::Constant, std::move(name)}; }
    static Term variable(std::string name) { return {Kind::Variable, std::move(name)}; }

    bool is_variable() const { return kind == Kind::Variable; }
    bool is_constant() const { return kind == Kind::Constant; }

    friend bool operator==(const Term&, const Term&) = default;
    friend auto operator<=>(const Term&, const Term&) = default;
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;
    SourcePos pos;

    std::size_t arity() const { return args.size(); }
    bool is_ground() const;

    // Structural: positions are ignored.
    friend bool operator==(const Atom& a, const Atom& b) {
        return a.predicate == b.predicate && a.args == b.args;
    }
};

struct Literal {
    Atom atom;
    bool classically_negated = false;

    friend bool operator==(const Literal&, const Literal&) = default;
};

/// K H <- K A1, ..., K An, not B1, ..., not Bm.  A rule with an empty body is
/// a fact.
struct MknfRule {
    Literal head;
    std::vector<Literal> positive_body;
    std::vector<Atom> negative_body;
    SourcePos pos;

    bool is_fact() const { return positive_body.empty() && negative_body.empty(); }

    friend bool operator==(const MknfRule& a, const MknfRule& b) {
        return a.head == b.head && a.positive_body == b.positive_body &&
               a.negative_body == b.negative_body;
    }
};

/// One conjunct of a concept expression.  Forall and Other exist so that
/// non-Horn input can be loaded and reported instead of rejected.
struct ConceptConjunct {
    enum class Kind { Atomic, Exists, Forall, Other };

    Kind kind = Kind::Atomic;
    std::string role;     // Exists, Forall
    std::string concept_name;  // Atomic name, filler of Exists/Forall, constructor of Other
    std::string text;     // Other: verbatim source text

    static ConceptConjunct atomic(std::string c) { return {Kind::Atomic, {}, std::move(c), {}}; }
    static ConceptConjunct exists(std::string r, std::string c) {
        return {Kind::Exists, std::move(r), std::move(c), {}};
    }
    static ConceptConjunct forall(std::string r, std::string c) {
        return {Kind::Forall, std::move(r), std::move(c), {}};
    }

    friend bool operator==(const ConceptConjunct&, const ConceptConjunct&) = default;
};

struct SubClass {
    std::vector<ConceptConjunct> lhs;
    std::optional<ConceptConjunct> rhs;  // empty: bottom

    bool is_disjointness() const { return !rhs.has_value(); }
    friend bool operator==(const SubClass&, const SubClass&) = default;
};

struct Equivalence {
    std::string first;
    std::string second;
    friend bool operator==(const Equivalence&, const Equivalence&) = default;
};

struct SubRole {
    std::string sub;
    std::string super;
    friend bool operator==(const SubRole&, const SubRole&) = default;
};

struct Transitive {
    std::string role;
    friend bool operator==(const Transitive&, const Transitive&) = default;
};

struct ConceptAssertion {
    std::string concept_name;
    std::string individual;
    friend bool operator==(const ConceptAssertion&, const ConceptAssertion&) = default;
};

struct RoleAssertion {
    std::string role;
    std::string subject;
    std::string object;
    friend bool operator==(const RoleAssertion&, const RoleAssertion&) = default;
};

struct DlAxiom {
    using Body =
        std::variant<SubClass, Equivalence, SubRole, Transitive, ConceptAssertion, RoleAssertion>;

    Body body;
    SourcePos pos;

    friend bool operator==(const DlAxiom& a, const DlAxiom& b) { return a.body == b.body; }
};

/// A1, ..., An, not B1, ..., not Bm => a1, ..., ak
struct IntegrityConstraint {
    std::vector<Atom> condition_positive;
    std::vector<Atom> condition_negative;
    std::vector<Literal> actions;
    SourcePos pos;

    friend bool operator==(const IntegrityConstraint& a, const IntegrityConstraint& b) {
        return a.condition_positive == b.condition_positive &&
               a.condition_negative == b.condition_negative && a.actions == b.actions;
    }
};

struct KnowledgeBase {
    std::vector<DlAxiom> ontology;
    std::vector<MknfRule> rules;
    std::vector<IntegrityConstraint> constraints;

    /// Every constant of the KB, in order of first occurrence (ontology,
    /// then rules, then constraints).
    std::vector<std::string> constants() const;

    bool empty() const { return ontology.empty() && rules.empty() && constraints.empty(); }

    friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;
};

/// q(X) <- A1, ..., An, not B1, ..., not Bm.  Variables of the body that are
/// not answer variables are projected away.
struct ConjunctiveQuery {
    std::vector<Atom> positive;
    std::vector<Atom> negative;
    std::vector<std::string> answer_vars;

    friend bool operator==(const ConjunctiveQuery&, const ConjunctiveQuery&) = default;
};

/// Variables of an atom list, in order of first occurrence, without repeats.
std::vector<std::string> variables_of(const std::vector<Atom>& atoms);
void collect_variables(const Atom& atom, std::vector<std::string>& out);

}  // namespace hmknf
