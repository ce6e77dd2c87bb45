#include <algorithm>
#include <map>
#include <set>

#include "hmknf/error.hpp"
#include "hmknf/ground.hpp"

namespace hmknf {

namespace {

using Subst = std::map<std::string, std::string>;

Atom substitute(const Atom& a, const Subst& s) {
    Atom out{a.predicate, {}, {}};
    for (const auto& t : a.args) {
        out.args.push_back(t.is_variable() ? Term::constant(s.at(t.name)) : t);
    }
    return out;
}

// Calls f(s) for every extension of `s` to `vars` over `constants`.
template <class F>
void enumerate(const std::vector<std::string>& vars, std::size_t k,
               const std::vector<std::string>& constants, Subst& s, F& f) {
    if (k == vars.size()) {
        f(s);
        return;
    }
    for (const auto& c : constants) {
        s[vars[k]] = c;
        enumerate(vars, k + 1, constants, s, f);
    }
    s.erase(vars[k]);
}

}  // namespace

GroundProgram ground_exhaustive(const DoubledProgram& program, std::size_t rule_budget) {
    std::vector<std::string> constants;
    {
        std::set<std::string> seen;
        auto note = [&](const Atom& a) {
            for (const auto& t : a.args)
                if (t.is_constant() && seen.insert(t.name).second) constants.push_back(t.name);
        };
        for (const auto& r : program.rules) {
            note(r.head);
            for (const auto& a : r.positive) note(a);
            for (const auto& a : r.negative) note(a);
        }
    }

    GroundProgram gp;
    std::size_t count = 0;
    for (std::size_t ri = 0; ri < program.rules.size(); ++ri) {
        const ProgramRule& r = program.rules[ri];
        std::vector<std::string> vars = variables_of(r.positive);
        std::vector<std::string> head_vars;
        collect_variables(r.head, head_vars);
        for (const auto& v : head_vars) {
            if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
                throw GroundingError("unsafe rule: head variable " + v +
                                     " does not occur in the positive body: " + to_string(r));
            }
        }
        // Variables of each negative literal that the positive body leaves free.
        std::vector<std::vector<std::string>> local(r.negative.size());
        for (std::size_t j = 0; j < r.negative.size(); ++j) {
            std::vector<std::string> vs;
            collect_variables(r.negative[j], vs);
            for (const auto& v : vs)
                if (std::find(vars.begin(), vars.end(), v) == vars.end()) local[j].push_back(v);
        }

        Subst s;
        auto emit = [&](Subst& sub) {
            if (++count > rule_budget) throw GroundingError("exhaustive grounding exceeds the budget");
            std::vector<AtomId> pos, neg;
            AtomId head = gp.intern_atom(substitute(r.head, sub));
            for (const auto& a : r.positive) pos.push_back(gp.intern_atom(substitute(a, sub)));
            for (std::size_t j = 0; j < r.negative.size(); ++j) {
                auto each = [&](Subst& inner) { neg.push_back(gp.intern_atom(substitute(r.negative[j], inner))); };
                Subst inner = sub;
                enumerate(local[j], 0, constants, inner, each);
            }
            gp.add_rule(head, pos, neg, static_cast<std::uint32_t>(ri));
        };
        enumerate(vars, 0, constants, s, emit);
    }
    return gp;
}

}  // namespace hmknf
