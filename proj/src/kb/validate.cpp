#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "hmknf/diagnostics.hpp"
#include "hmknf/printer.hpp"

namespace hmknf {

namespace {

class Validator {
public:
    std::vector<Diagnostic> run(const KnowledgeBase& kb) {
        for (const auto& ax : kb.ontology) ontology(ax);
        for (const auto& r : kb.rules) rule(r);
        for (const auto& ic : kb.constraints) constraint(ic);
        reserved_names();
        undefined_predicates();
        return std::move(out_);
    }

private:
    struct PredInfo {
        std::size_t arity = 0;
        SourcePos first;
    };

    void error(SourcePos pos, std::string msg) { out_.push_back({Severity::Error, std::move(msg), pos}); }
    void warning(SourcePos pos, std::string msg) {
        out_.push_back({Severity::Warning, std::move(msg), pos});
    }

    void use(const std::string& pred, std::size_t arity, SourcePos pos) {
        auto [it, fresh] = preds_.try_emplace(pred, PredInfo{arity, pos});
        if (!fresh && it->second.arity != arity) {
            std::ostringstream os;
            os << "arity clash: predicate " << pred << " used with arity " << it->second.arity
               << " (at " << it->second.first.line << ':' << it->second.first.column
               << ") and arity " << arity;
            error(pos, os.str());
        }
        if (order_set_.insert(pred).second) order_.push_back(pred);
    }

    void use(const Atom& a) { use(a.predicate, a.arity(), a.pos); }

    void concept_use(const ConceptConjunct& c, SourcePos pos, bool defining) {
        switch (c.kind) {
            case ConceptConjunct::Kind::Atomic:
                use(c.concept_name, 1, pos);
                (defining ? defined_ : used_).insert(c.concept_name);
                break;
            case ConceptConjunct::Kind::Exists:
            case ConceptConjunct::Kind::Forall:
                use(c.role, 2, pos);
                use(c.concept_name, 1, pos);
                if (!defining) {
                    used_.insert(c.role);
                    used_.insert(c.concept_name);
                }
                break;
            case ConceptConjunct::Kind::Other: break;
        }
    }

    void ontology(const DlAxiom& ax) {
        struct Visitor {
            Validator& v;
            SourcePos pos;
            void operator()(const SubClass& sc) const {
                if (sc.lhs.empty()) v.error(pos, "subclass axiom with an empty left-hand side");
                for (const auto& c : sc.lhs) v.concept_use(c, pos, false);
                if (sc.rhs) v.concept_use(*sc.rhs, pos, true);
            }
            void operator()(const Equivalence& e) const {
                v.use(e.first, 1, pos);
                v.use(e.second, 1, pos);
                v.defined_.insert(e.first);
                v.defined_.insert(e.second);
            }
            void operator()(const SubRole& s) const {
                v.use(s.sub, 2, pos);
                v.use(s.super, 2, pos);
                v.used_.insert(s.sub);
                v.defined_.insert(s.super);
            }
            void operator()(const Transitive& t) const { v.use(t.role, 2, pos); }
            void operator()(const ConceptAssertion& a) const {
                v.use(a.concept_name, 1, pos);
                v.defined_.insert(a.concept_name);
            }
            void operator()(const RoleAssertion& a) const {
                v.use(a.role, 2, pos);
                v.defined_.insert(a.role);
            }
        };
        std::visit(Visitor{*this, ax.pos}, ax.body);
    }

    // Variables bound by the positive part must cover `required`; each
    // variable that occurs only under default negation must stay inside a
    // single negative literal (it is read as existentially quantified there).
    void safety(const std::vector<std::string>& bound, const std::vector<Atom>& required,
                const std::vector<Atom>& negative, SourcePos pos, const char* what) {
        auto is_bound = [&](const std::string& v) {
            return std::find(bound.begin(), bound.end(), v) != bound.end();
        };
        for (const auto& v : variables_of(required)) {
            if (!is_bound(v)) {
                error(pos, std::string("unsafe ") + what + ": variable " + v +
                               " does not occur in a positive body literal");
            }
        }
        std::map<std::string, int> local_uses;
        for (const auto& n : negative) {
            std::vector<std::string> vs;
            collect_variables(n, vs);
            for (const auto& v : vs) {
                if (!is_bound(v)) ++local_uses[v];
            }
        }
        auto required_vars = variables_of(required);
        for (const auto& [v, count] : local_uses) {
            bool in_required =
                std::find(required_vars.begin(), required_vars.end(), v) != required_vars.end();
            if (count > 1 && !in_required) {
                error(pos, std::string("unsafe ") + what + ": variable " + v +
                               " occurs only under 'not' but in more than one literal");
            }
        }
    }

    void rule(const MknfRule& r) {
        use(r.head.atom);
        defined_.insert(r.head.atom.predicate);
        std::vector<Atom> positive;
        for (const auto& l : r.positive_body) {
            use(l.atom);
            if (!l.classically_negated) used_.insert(l.atom.predicate);
            positive.push_back(l.atom);
            if (l.classically_negated) negated_.emplace(l.atom.predicate, l.atom.arity());
        }
        for (const auto& a : r.negative_body) {
            use(a);
            used_.insert(a.predicate);
        }
        if (r.head.classically_negated) negated_.emplace(r.head.atom.predicate, r.head.atom.arity());
        safety(variables_of(positive), {r.head.atom}, r.negative_body, r.pos, "rule");
    }

    void constraint(const IntegrityConstraint& ic) {
        if (ic.actions.empty()) error(ic.pos, "integrity constraint without actions");
        for (const auto& a : ic.condition_positive) {
            use(a);
            used_.insert(a.predicate);
        }
        for (const auto& a : ic.condition_negative) {
            use(a);
            used_.insert(a.predicate);
        }
        std::vector<Atom> actions;
        for (const auto& l : ic.actions) {
            use(l.atom);
            defined_.insert(l.atom.predicate);
            actions.push_back(l.atom);
            if (l.classically_negated) negated_.emplace(l.atom.predicate, l.atom.arity());
        }
        safety(variables_of(ic.condition_positive), actions, ic.condition_negative, ic.pos,
               "constraint");
    }

    void reserved_names() {
        for (const auto& [pred, arity] : negated_) {
            for (const std::string prefix : {"non", "n"}) {
                auto it = preds_.find(prefix + pred);
                if (it != preds_.end() && it->second.arity == arity) {
                    error(it->second.first, "reserved name: predicate " + prefix + pred +
                                                " collides with the name generated for -" + pred);
                }
            }
        }
    }

    void undefined_predicates() {
        for (const auto& p : order_) {
            if (used_.count(p) && !defined_.count(p)) {
                const auto& info = preds_.at(p);
                std::ostringstream os;
                os << "predicate " << p << '/' << info.arity
                   << " is never defined; it is false everywhere";
                warning(info.first, os.str());
            }
        }
    }

    std::map<std::string, PredInfo> preds_;
    std::vector<std::string> order_;
    std::set<std::string> order_set_;
    std::set<std::string> used_;
    std::set<std::string> defined_;
    std::set<std::pair<std::string, std::size_t>> negated_;
    std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> validate(const KnowledgeBase& kb) { return Validator{}.run(kb); }

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string format(const Diagnostic& d) {
    std::ostringstream os;
    os << d.pos.line << ':' << d.pos.column << ": "
       << (d.severity == Severity::Error ? "error" : "warning") << ": " << d.message;
    return os.str();
}

}  // namespace hmknf
