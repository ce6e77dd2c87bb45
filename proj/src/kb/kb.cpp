#include "hmknf/kb.hpp"

#include <algorithm>
#include <unordered_set>

namespace hmknf {

bool Atom::is_ground() const {
    return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
}

void collect_variables(const Atom& atom, std::vector<std::string>& out) {
    for (const auto& t : atom.args) {
        if (t.is_variable() && std::find(out.begin(), out.end(), t.name) == out.end()) {
            out.push_back(t.name);
        }
    }
}

std::vector<std::string> variables_of(const std::vector<Atom>& atoms) {
    std::vector<std::string> out;
    for (const auto& a : atoms) collect_variables(a, out);
    return out;
}

namespace {

struct ConstantCollector {
    std::vector<std::string> order;
    std::unordered_set<std::string> seen;

    void add(const std::string& c) {
        if (seen.insert(c).second) order.push_back(c);
    }
    void add(const Atom& a) {
        for (const auto& t : a.args)
            if (t.is_constant()) add(t.name);
    }
};

}  // namespace

std::vector<std::string> KnowledgeBase::constants() const {
    ConstantCollector c;
    for (const auto& ax : ontology) {
        if (const auto* ca = std::get_if<ConceptAssertion>(&ax.body)) {
            c.add(ca->individual);
        } else if (const auto* ra = std::get_if<RoleAssertion>(&ax.body)) {
            c.add(ra->subject);
            c.add(ra->object);
        }
    }
    for (const auto& r : rules) {
        c.add(r.head.atom);
        for (const auto& l : r.positive_body) c.add(l.atom);
        for (const auto& a : r.negative_body) c.add(a);
    }
    for (const auto& ic : constraints) {
        for (const auto& a : ic.condition_positive) c.add(a);
        for (const auto& a : ic.condition_negative) c.add(a);
        for (const auto& l : ic.actions) c.add(l.atom);
    }
    return c.order;
}

}  // namespace hmknf
