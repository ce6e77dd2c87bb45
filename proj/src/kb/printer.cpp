#include "hmknf/printer.hpp"

#include <cctype>
#include <sstream>

namespace hmknf {

namespace {

template <class T, class F>
void join(std::ostringstream& os, const std::vector<T>& items, const char* sep, F&& f) {
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) os << sep;
        f(items[i]);
    }
}

std::string body_string(const std::vector<Literal>& pos, const std::vector<Atom>& neg) {
    std::ostringstream os;
    join(os, pos, ", ", [&](const Literal& l) { os << to_string(l); });
    if (!pos.empty() && !neg.empty()) os << ", ";
    join(os, neg, ", ", [&](const Atom& a) { os << "not " << to_string(a); });
    return os.str();
}

}  // namespace

bool needs_quotes(const std::string& c) {
    if (c.empty()) return true;
    auto uc = [](char ch) { return static_cast<unsigned char>(ch); };
    if (std::isdigit(uc(c[0]))) {
        for (char ch : c)
            if (!std::isdigit(uc(ch))) return true;
        return false;
    }
    if (!std::islower(uc(c[0]))) return true;
    for (char ch : c)
        if (!std::isalnum(uc(ch)) && ch != '_') return true;
    return c == "not";
}

std::string to_string(const Term& t) {
    if (t.is_variable() || !needs_quotes(t.name)) return t.name;
    std::string out = "\"";
    for (char c : t.name) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string to_string(const Atom& a) {
    std::ostringstream os;
    os << a.predicate;
    if (!a.args.empty()) {
        os << '(';
        join(os, a.args, ", ", [&](const Term& t) { os << to_string(t); });
        os << ')';
    }
    return os.str();
}

std::string to_string(const Literal& l) {
    return (l.classically_negated ? "-" : "") + to_string(l.atom);
}

std::string to_string(const MknfRule& r) {
    if (r.is_fact()) return to_string(r.head) + ".";
    return to_string(r.head) + " :- " + body_string(r.positive_body, r.negative_body) + ".";
}

std::string to_string(const ConceptConjunct& c) {
    switch (c.kind) {
        case ConceptConjunct::Kind::Atomic: return c.concept_name;
        case ConceptConjunct::Kind::Exists: return "some(" + c.role + ", " + c.concept_name + ")";
        case ConceptConjunct::Kind::Forall: return "all(" + c.role + ", " + c.concept_name + ")";
        case ConceptConjunct::Kind::Other: return c.text;
    }
    return {};
}

std::string to_string(const DlAxiom& ax) {
    struct Visitor {
        std::string operator()(const SubClass& sc) const {
            std::ostringstream os;
            os << "subclass(";
            if (sc.lhs.size() == 1) {
                os << to_string(sc.lhs.front());
            } else {
                os << "and(";
                join(os, sc.lhs, ", ", [&](const ConceptConjunct& c) { os << to_string(c); });
                os << ')';
            }
            os << ", " << (sc.rhs ? to_string(*sc.rhs) : std::string("bot")) << ").";
            return os.str();
        }
        std::string operator()(const Equivalence& e) const {
            return "equiv(" + e.first + ", " + e.second + ").";
        }
        std::string operator()(const SubRole& s) const {
            return "subrole(" + s.sub + ", " + s.super + ").";
        }
        std::string operator()(const Transitive& t) const { return "transitive(" + t.role + ")."; }
        std::string operator()(const ConceptAssertion& a) const {
            return a.concept_name + "(" + to_string(Term::constant(a.individual)) + ").";
        }
        std::string operator()(const RoleAssertion& a) const {
            return a.role + "(" + to_string(Term::constant(a.subject)) + ", " +
                   to_string(Term::constant(a.object)) + ").";
        }
    };
    return std::visit(Visitor{}, ax.body);
}

std::string to_string(const IntegrityConstraint& ic) {
    std::vector<Literal> pos;
    for (const auto& a : ic.condition_positive) pos.push_back({a, false});
    std::ostringstream os;
    os << body_string(pos, ic.condition_negative) << " => ";
    join(os, ic.actions, ", ", [&](const Literal& l) { os << to_string(l); });
    os << '.';
    return os.str();
}

std::string to_string(const ConjunctiveQuery& q) {
    std::vector<Literal> pos;
    for (const auto& a : q.positive) pos.push_back({a, false});
    return body_string(pos, q.negative);
}

std::string to_string(const KnowledgeBase& kb) {
    std::ostringstream os;
    if (!kb.ontology.empty()) {
        os << "#ontology\n";
        for (const auto& ax : kb.ontology) os << to_string(ax) << '\n';
    }
    if (!kb.rules.empty()) {
        os << "#rules\n";
        for (const auto& r : kb.rules) os << to_string(r) << '\n';
    }
    if (!kb.constraints.empty()) {
        os << "#constraints\n";
        for (const auto& c : kb.constraints) os << to_string(c) << '\n';
    }
    return os.str();
}

}  // namespace hmknf
