#pragma once

// Compilation of a knowledge base into a doubled normal logic program:
// integrity constraints -> MKNF rules, classical negation -> primed
// predicates plus N-axioms, then knowledge-base doubling with the
// semi-negative guard, over level-mangled predicate names.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hmknf/dl_translator.hpp"
#include "hmknf/kb.hpp"

namespace hmknf {

/// Name levels: a (original), d (non-falsity), n (classical negation known
/// from the ontology or the N-axioms) and non (primed stand-in for -p).
enum class Level { A, D, N, Non };

/// Prefix concatenation, casing of `symbol` preserved: (rwy, D) -> drwy.
std::string mangle(std::string_view symbol, Level level);

/// Inverse of mangle for one level; nullopt when the prefix does not match.
std::optional<std::string> strip(std::string_view identifier, Level level);

const char* level_prefix(Level level);

struct LevelNames {
    std::string a;
    std::string d;
    std::string n;
};

struct SymbolEntry {
    std::string name;
    std::size_t arity = 0;
    bool dl = false;       // occurs in the translated ontology
    bool negated = false;  // occurs classically negated; has a primed twin
};

class SymbolTable {
public:
    void add(const std::string& name, std::size_t arity);
    void mark_dl(const std::string& name);
    void mark_negated(const std::string& name);

    const SymbolEntry* find(std::string_view name) const;
    const std::vector<SymbolEntry>& entries() const { return entries_; }

    /// a/d/n names of `name`, or of its primed twin "non"+name.
    static LevelNames names(std::string_view name, bool primed = false);

    struct Resolved {
        std::string source;
        Level level = Level::A;  // A, D or N
        bool primed = false;
    };
    /// Maps a generated identifier back to its source predicate.
    std::optional<Resolved> resolve(std::string_view mangled) const;

    friend bool operator==(const SymbolTable& a, const SymbolTable& b) {
        return a.entries_.size() == b.entries_.size() &&
               std::equal(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                          [](const SymbolEntry& x, const SymbolEntry& y) {
                              return x.name == y.name && x.arity == y.arity && x.dl == y.dl &&
                                     x.negated == y.negated;
                          });
    }

private:
    std::vector<SymbolEntry> entries_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

struct Origin {
    enum class Kind { Axiom, Rule, Constraint, NegationAxiom };

    Kind kind = Kind::Rule;
    std::size_t index = 0;
    std::string text;

    friend bool operator==(const Origin&, const Origin&) = default;
};

const char* to_string(Origin::Kind kind);

enum class RuleLevel { A, D, N };

/// A normal rule over mangled predicate names.
struct ProgramRule {
    Atom head;
    std::vector<Atom> positive;
    std::vector<Atom> negative;
    RuleLevel level = RuleLevel::A;
    std::size_t origin = 0;  // index into DoubledProgram::origins

    friend bool operator==(const ProgramRule& a, const ProgramRule& b) {
        return a.head == b.head && a.positive == b.positive && a.negative == b.negative &&
               a.level == b.level && a.origin == b.origin;
    }
};

struct DoubledProgram {
    std::vector<ProgramRule> rules;
    SymbolTable symbols;
    std::vector<Origin> origins;
    std::vector<UnsupportedAxiom> unsupported;
};

/// Each constraint with actions a1..ak yields k rules sharing its condition.
std::vector<MknfRule> compile_constraints(const std::vector<IntegrityConstraint>& constraints);

struct NegationElimination {
    /// The input rules in order with every -p replaced by "non"+p.
    std::vector<MknfRule> rules;
    /// For every negated p: -p(X1..Xk) <- nonp(X1..Xk) and -nonp(X1..Xk) <- p(X1..Xk),
    /// where a negated head denotes the N-predicate.
    std::vector<MknfRule> n_axioms;
    /// Negated predicates in order of first occurrence, with arity.
    std::vector<std::pair<std::string, std::size_t>> negated;
};

/// Throws CompileError when "non"+p or "n"+p already names a predicate of the
/// same arity for some negated p (checked against the rules and `others`).
NegationElimination eliminate_classical_negation(
    const std::vector<MknfRule>& rules,
    const std::set<std::pair<std::string, std::size_t>>& others = {});

struct DoublingInput {
    /// One origin index per input rule; empty means every rule is its own origin.
    std::vector<Origin> origins;
    std::vector<std::size_t> rule_origin;
    /// Predicates produced by negation elimination: "nonob" -> "ob".
    std::map<std::string, std::string> primed;
};

/// For each H <- A1..An, not B1..Bm:
///   aH <- aA1..aAn, not dB1..dBm.
///   dH <- dA1..dAn, not aB1..aBm, not nH.
/// A rule with a classically negated head -H <- A1..An is an N-rule and is
/// emitted once as nH <- aA1..aAn.  Any other classical negation is a
/// CompileError.
DoubledProgram double_program(const std::vector<MknfRule>& rules,
                              const std::set<std::string>& dl_predicates,
                              const DoublingInput& input = {});

/// translate_ontology + compile_constraints + eliminate_classical_negation +
/// double_program.  Output order: ontology rules by axiom, program rules and
/// facts in source order, constraint rules, then N-axioms.  Throws
/// ValidationError when validate(kb) reports errors.
DoubledProgram compile(const KnowledgeBase& kb);
/// compile() with the ontology already translated by translate_ontology.
DoubledProgram compile(const KnowledgeBase& kb, TranslationResult translated);

/// Native canonical text of a compiled rule: `drwy(X) :- dopnRwy(X), not nrwy(X).`
std::string to_string(const ProgramRule& rule);

}  // namespace hmknf
