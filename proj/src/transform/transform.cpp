#include "hmknf/transform.hpp"

#include <algorithm>

#include "hmknf/diagnostics.hpp"
#include "hmknf/error.hpp"
#include "hmknf/printer.hpp"

namespace hmknf {

namespace {

Atom renamed(const Atom& a, std::string name) { return Atom{std::move(name), a.args, a.pos}; }

void note_predicates(const MknfRule& r, std::set<std::pair<std::string, std::size_t>>& out) {
    out.emplace(r.head.atom.predicate, r.head.atom.arity());
    for (const auto& l : r.positive_body) out.emplace(l.atom.predicate, l.atom.arity());
    for (const auto& a : r.negative_body) out.emplace(a.predicate, a.arity());
}

Atom fresh_atom(const std::string& p, std::size_t arity) {
    Atom a{p, {}, {}};
    for (std::size_t i = 1; i <= arity; ++i) a.args.push_back(Term::variable("X" + std::to_string(i)));
    return a;
}

}  // namespace

const char* level_prefix(Level level) {
    switch (level) {
        case Level::A: return "a";
        case Level::D: return "d";
        case Level::N: return "n";
        case Level::Non: return "non";
    }
    return "";
}

std::string mangle(std::string_view symbol, Level level) {
    return std::string(level_prefix(level)) + std::string(symbol);
}

std::optional<std::string> strip(std::string_view identifier, Level level) {
    std::string_view prefix = level_prefix(level);
    if (identifier.size() <= prefix.size() || identifier.substr(0, prefix.size()) != prefix) {
        return std::nullopt;
    }
    return std::string(identifier.substr(prefix.size()));
}

void SymbolTable::add(const std::string& name, std::size_t arity) {
    if (index_.count(name)) return;
    index_.emplace(name, entries_.size());
    entries_.push_back({name, arity, false, false});
}

void SymbolTable::mark_dl(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) entries_[it->second].dl = true;
}

void SymbolTable::mark_negated(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) entries_[it->second].negated = true;
}

const SymbolEntry* SymbolTable::find(std::string_view name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &entries_[it->second];
}

LevelNames SymbolTable::names(std::string_view name, bool primed) {
    std::string base = primed ? mangle(name, Level::Non) : std::string(name);
    return {mangle(base, Level::A), mangle(base, Level::D), mangle(base, Level::N)};
}

std::optional<SymbolTable::Resolved> SymbolTable::resolve(std::string_view mangled) const {
    for (Level level : {Level::A, Level::D, Level::N}) {
        auto rest = strip(mangled, level);
        if (!rest) continue;
        if (find(*rest)) return Resolved{*rest, level, false};
        if (auto base = strip(*rest, Level::Non)) {
            const SymbolEntry* e = find(*base);
            if (e && e->negated) return Resolved{*base, level, true};
        }
    }
    return std::nullopt;
}

const char* to_string(Origin::Kind kind) {
    switch (kind) {
        case Origin::Kind::Axiom: return "axiom";
        case Origin::Kind::Rule: return "rule";
        case Origin::Kind::Constraint: return "constraint";
        case Origin::Kind::NegationAxiom: return "negation";
    }
    return "";
}

std::vector<MknfRule> compile_constraints(const std::vector<IntegrityConstraint>& constraints) {
    std::vector<MknfRule> out;
    for (const auto& ic : constraints) {
        for (const auto& action : ic.actions) {
            MknfRule r;
            r.head = action;
            for (const auto& a : ic.condition_positive) r.positive_body.push_back({a, false});
            r.negative_body = ic.condition_negative;
            r.pos = ic.pos;
            out.push_back(std::move(r));
        }
    }
    return out;
}

NegationElimination eliminate_classical_negation(
    const std::vector<MknfRule>& rules,
    const std::set<std::pair<std::string, std::size_t>>& others) {
    NegationElimination out;
    std::set<std::pair<std::string, std::size_t>> seen;
    auto negated = [&](const Atom& a) {
        if (seen.emplace(a.predicate, a.arity()).second) out.negated.emplace_back(a.predicate, a.arity());
    };
    for (const auto& r : rules) {
        if (r.head.classically_negated) negated(r.head.atom);
        for (const auto& l : r.positive_body)
            if (l.classically_negated) negated(l.atom);
    }

    std::set<std::pair<std::string, std::size_t>> known = others;
    for (const auto& r : rules) note_predicates(r, known);
    for (const auto& [p, k] : out.negated) {
        for (Level level : {Level::Non, Level::N}) {
            std::string name = mangle(p, level);
            if (known.count({name, k})) {
                throw CompileError("reserved name: predicate " + name + "/" + std::to_string(k) +
                                   " collides with the name generated for -" + p);
            }
        }
    }

    auto prime = [](const Literal& l) {
        return l.classically_negated ? Literal{renamed(l.atom, mangle(l.atom.predicate, Level::Non)), false}
                                     : l;
    };
    for (const auto& r : rules) {
        MknfRule copy = r;
        copy.head = prime(r.head);
        for (auto& l : copy.positive_body) l = prime(l);
        out.rules.push_back(std::move(copy));
    }

    for (const auto& [p, k] : out.negated) {
        Atom plain = fresh_atom(p, k);
        Atom primed = fresh_atom(mangle(p, Level::Non), k);
        MknfRule first;
        first.head = {plain, true};
        first.positive_body = {{primed, false}};
        MknfRule second;
        second.head = {primed, true};
        second.positive_body = {{plain, false}};
        out.n_axioms.push_back(std::move(first));
        out.n_axioms.push_back(std::move(second));
    }
    return out;
}

DoubledProgram double_program(const std::vector<MknfRule>& rules,
                              const std::set<std::string>& dl_predicates,
                              const DoublingInput& input) {
    DoubledProgram out;
    out.origins = input.origins;
    const bool own_origins = input.rule_origin.empty();
    if (!own_origins && input.rule_origin.size() != rules.size()) {
        throw CompileError("double_program: one origin per rule is required");
    }

    auto source_of = [&](const std::string& p) -> std::pair<std::string, bool> {
        auto it = input.primed.find(p);
        if (it != input.primed.end()) return {it->second, true};
        return {p, false};
    };
    auto register_atom = [&](const Atom& a) {
        auto [src, primed] = source_of(a.predicate);
        out.symbols.add(src, a.arity());
        if (primed) out.symbols.mark_negated(src);
    };
    auto level_atom = [&](const Atom& a, Level level) {
        return renamed(a, mangle(a.predicate, level));
    };
    auto at_level = [&](const std::vector<Literal>& lits, Level level) {
        std::vector<Atom> atoms;
        for (const auto& l : lits) {
            if (l.classically_negated) {
                throw CompileError("classical negation in a rule body must be eliminated first: " +
                                   to_string(l));
            }
            atoms.push_back(level_atom(l.atom, level));
        }
        return atoms;
    };
    auto neg_level = [&](const std::vector<Atom>& atoms, Level level) {
        std::vector<Atom> out_atoms;
        for (const auto& a : atoms) out_atoms.push_back(level_atom(a, level));
        return out_atoms;
    };

    for (std::size_t i = 0; i < rules.size(); ++i) {
        const MknfRule& r = rules[i];
        register_atom(r.head.atom);
        for (const auto& l : r.positive_body) register_atom(l.atom);
        for (const auto& a : r.negative_body) register_atom(a);

        std::size_t origin;
        if (own_origins) {
            origin = out.origins.size();
            out.origins.push_back({Origin::Kind::Rule, i, to_string(r)});
        } else {
            origin = input.rule_origin[i];
        }

        const Atom& h = r.head.atom;
        if (r.head.classically_negated) {
            ProgramRule n;
            n.head = level_atom(h, Level::N);
            n.positive = at_level(r.positive_body, Level::A);
            n.negative = neg_level(r.negative_body, Level::D);
            n.level = RuleLevel::N;
            n.origin = origin;
            out.rules.push_back(std::move(n));
            continue;
        }

        ProgramRule a;
        a.head = level_atom(h, Level::A);
        a.positive = at_level(r.positive_body, Level::A);
        a.negative = neg_level(r.negative_body, Level::D);
        a.level = RuleLevel::A;
        a.origin = origin;

        ProgramRule d;
        d.head = level_atom(h, Level::D);
        d.positive = at_level(r.positive_body, Level::D);
        d.negative = neg_level(r.negative_body, Level::A);
        d.negative.push_back(level_atom(h, Level::N));
        d.level = RuleLevel::D;
        d.origin = origin;

        out.rules.push_back(std::move(a));
        out.rules.push_back(std::move(d));
    }

    for (const auto& p : dl_predicates) out.symbols.mark_dl(p);
    return out;
}

DoubledProgram compile(const KnowledgeBase& kb) { return compile(kb, translate_ontology(kb.ontology)); }

DoubledProgram compile(const KnowledgeBase& kb, TranslationResult tr) {
    auto diagnostics = validate(kb);
    if (has_errors(diagnostics)) throw ValidationError(std::move(diagnostics));

    DoublingInput input;
    std::vector<MknfRule> all;

    for (std::size_t i = 0; i < kb.ontology.size(); ++i) {
        input.origins.push_back({Origin::Kind::Axiom, i, to_string(kb.ontology[i])});
    }
    // Ontology rules by axiom; an axiom's definite rules precede its
    // disjointness rules.
    std::size_t ri = 0, ni = 0;
    while (ri < tr.rules.size() || ni < tr.negation_rules.size()) {
        bool take_rule = ni == tr.negation_rules.size() ||
                         (ri < tr.rules.size() && tr.rule_axiom[ri] <= tr.negation_rule_axiom[ni]);
        if (take_rule) {
            all.push_back(tr.rules[ri]);
            input.rule_origin.push_back(tr.rule_axiom[ri]);
            ++ri;
        } else {
            all.push_back(tr.negation_rules[ni]);
            input.rule_origin.push_back(tr.negation_rule_axiom[ni]);
            ++ni;
        }
    }

    std::vector<MknfRule> program = kb.rules;
    std::vector<std::size_t> program_origin;
    for (std::size_t i = 0; i < kb.rules.size(); ++i) {
        program_origin.push_back(input.origins.size());
        input.origins.push_back({Origin::Kind::Rule, i, to_string(kb.rules[i])});
    }
    for (std::size_t i = 0; i < kb.constraints.size(); ++i) {
        std::size_t origin = input.origins.size();
        input.origins.push_back({Origin::Kind::Constraint, i, to_string(kb.constraints[i])});
        for (auto& r : compile_constraints({kb.constraints[i]})) {
            program.push_back(std::move(r));
            program_origin.push_back(origin);
        }
    }

    std::set<std::pair<std::string, std::size_t>> ontology_preds;
    for (const auto& r : all) note_predicates(r, ontology_preds);
    NegationElimination elim = eliminate_classical_negation(program, ontology_preds);

    for (std::size_t i = 0; i < elim.rules.size(); ++i) {
        all.push_back(std::move(elim.rules[i]));
        input.rule_origin.push_back(program_origin[i]);
    }
    for (std::size_t i = 0; i < elim.negated.size(); ++i) {
        const auto& [p, k] = elim.negated[i];
        std::size_t origin = input.origins.size();
        input.origins.push_back({Origin::Kind::NegationAxiom, i, "-" + p + "/" + std::to_string(k)});
        input.primed.emplace(mangle(p, Level::Non), p);
        for (std::size_t j = 0; j < 2; ++j) {
            all.push_back(std::move(elim.n_axioms[2 * i + j]));
            input.rule_origin.push_back(origin);
        }
    }

    DoubledProgram out = double_program(all, tr.dl_predicates, input);
    out.unsupported = std::move(tr.unsupported);
    return out;
}

std::string to_string(const ProgramRule& rule) {
    std::string out = to_string(rule.head);
    if (rule.positive.empty() && rule.negative.empty()) return out + ".";
    out += " :- ";
    bool first = true;
    for (const auto& a : rule.positive) {
        if (!first) out += ", ";
        first = false;
        out += to_string(a);
    }
    for (const auto& a : rule.negative) {
        if (!first) out += ", ";
        first = false;
        out += "not " + to_string(a);
    }
    return out + ".";
}

}  // namespace hmknf
