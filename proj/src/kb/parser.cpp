#include "hmknf/parser.hpp"

#include <algorithm>
#include <string>

#include "hmknf/diagnostics.hpp"
#include "hmknf/error.hpp"
#include "lexer.hpp"

namespace hmknf {

using detail::Tok;
using detail::TokenStream;

namespace {

enum class Section { None, Ontology, Rules, Constraints };

class ProgramParser {
public:
    ProgramParser(std::string_view src, TokenStream ts) : src_(src), ts_(std::move(ts)) {}

    KnowledgeBase run() {
        KnowledgeBase kb;
        Section section = Section::None;
        while (!ts_.at(Tok::End)) {
            if (ts_.at(Tok::Section)) {
                const auto& t = ts_.next();
                if (t.text == "ontology") {
                    section = Section::Ontology;
                } else if (t.text == "rules") {
                    section = Section::Rules;
                } else if (t.text == "constraints") {
                    section = Section::Constraints;
                } else {
                    throw ParseError(t.pos, describe(t), {"#ontology", "#rules", "#constraints"},
                                     "unknown section '#" + t.text + "'");
                }
                continue;
            }
            switch (section) {
                case Section::None: ts_.fail({"#ontology", "#rules", "#constraints"});
                case Section::Ontology: kb.ontology.push_back(axiom()); break;
                case Section::Rules: kb.rules.push_back(rule()); break;
                case Section::Constraints: kb.constraints.push_back(constraint()); break;
            }
        }
        return kb;
    }

private:
    // ---- ontology ---------------------------------------------------------

    std::string name(std::vector<std::string> what) {
        if (!ts_.at(Tok::Ident)) ts_.fail(std::move(what));
        return ts_.next().text;
    }

    std::string individual() {
        const auto& t = ts_.peek();
        if (t.kind == Tok::Ident || t.kind == Tok::Integer || t.kind == Tok::String) {
            return ts_.next().text;
        }
        if (t.kind == Tok::Variable) {
            ts_.fail({"constant"}, "assertions must be ground; found variable " + t.text);
        }
        ts_.fail({"constant"});
    }

    // Skips a balanced parenthesised argument list; the caller has consumed
    // the constructor name and stands on '('.
    void skip_balanced() {
        int depth = 0;
        do {
            if (ts_.at(Tok::End)) ts_.fail({"')'"});
            if (ts_.at(Tok::LParen)) ++depth;
            if (ts_.at(Tok::RParen)) --depth;
            ts_.next();
        } while (depth > 0);
    }

    ConceptConjunct concept_expr() {
        const std::size_t begin = ts_.peek().begin;
        std::string head = name({"concept name", "some(...)", "all(...)"});
        if (!ts_.at(Tok::LParen)) return ConceptConjunct::atomic(head);

        const bool restriction = head == "some" || head == "all";
        if (restriction && ts_.peek(1).kind == Tok::Ident && ts_.peek(2).kind == Tok::Comma &&
            ts_.peek(3).kind == Tok::Ident && ts_.peek(4).kind == Tok::RParen) {
            ts_.next();
            std::string role = ts_.next().text;
            ts_.next();
            std::string filler = ts_.next().text;
            ts_.next();
            return head == "some" ? ConceptConjunct::exists(role, filler)
                                  : ConceptConjunct::forall(role, filler);
        }
        skip_balanced();
        ConceptConjunct other;
        other.kind = ConceptConjunct::Kind::Other;
        other.concept_name = head;
        other.text = std::string(src_.substr(begin, ts_.last_end() - begin));
        return other;
    }

    DlAxiom axiom() {
        DlAxiom ax;
        ax.pos = ts_.peek().pos;
        if (ts_.at(Tok::Minus)) {
            ts_.fail({"axiom"}, "classical negation is not allowed in the ontology section");
        }
        std::string head = name({"axiom"});

        if (head == "subclass") {
            ts_.expect(Tok::LParen, {"'('"});
            SubClass sc;
            if (ts_.at_ident("and") && ts_.peek(1).kind == Tok::LParen) {
                ts_.next();
                ts_.next();
                sc.lhs.push_back(concept_expr());
                ts_.expect(Tok::Comma, {"','"});
                sc.lhs.push_back(concept_expr());
                while (ts_.accept(Tok::Comma)) sc.lhs.push_back(concept_expr());
                ts_.expect(Tok::RParen, {"','", "')'"});
            } else {
                sc.lhs.push_back(concept_expr());
            }
            ts_.expect(Tok::Comma, {"','"});
            if (ts_.at_ident("bot") && ts_.peek(1).kind == Tok::RParen) {
                ts_.next();
            } else {
                sc.rhs = concept_expr();
            }
            ts_.expect(Tok::RParen, {"')'"});
            ax.body = std::move(sc);
        } else if (head == "equiv" || head == "subrole") {
            ts_.expect(Tok::LParen, {"'('"});
            std::string a = name({head == "equiv" ? "concept name" : "role name"});
            ts_.expect(Tok::Comma, {"','"});
            std::string b = name({head == "equiv" ? "concept name" : "role name"});
            ts_.expect(Tok::RParen, {"')'"});
            if (head == "equiv") {
                ax.body = Equivalence{a, b};
            } else {
                ax.body = SubRole{a, b};
            }
        } else if (head == "transitive") {
            ts_.expect(Tok::LParen, {"'('"});
            ax.body = Transitive{name({"role name"})};
            ts_.expect(Tok::RParen, {"')'"});
        } else {
            ts_.expect(Tok::LParen, {"'('"});
            std::string first = individual();
            if (ts_.accept(Tok::Comma)) {
                std::string second = individual();
                if (ts_.at(Tok::Comma)) {
                    ts_.fail({"')'"}, "assertions take one or two individuals");
                }
                ts_.expect(Tok::RParen, {"')'"});
                ax.body = RoleAssertion{head, first, second};
            } else {
                ts_.expect(Tok::RParen, {"','", "')'"});
                ax.body = ConceptAssertion{head, first};
            }
        }
        ts_.expect(Tok::Dot, {"'.'"});
        return ax;
    }

    // ---- rules ------------------------------------------------------------

    Literal literal() {
        Literal l;
        l.classically_negated = ts_.accept(Tok::Minus);
        l.atom = detail::parse_atom(ts_);
        return l;
    }

    struct Body {
        std::vector<Literal> positive;
        std::vector<Atom> negative;
    };

    void body_literal(Body& body) {
        if (ts_.at_ident("not") && ts_.peek(1).kind != Tok::LParen &&
            ts_.peek(1).kind != Tok::Comma && ts_.peek(1).kind != Tok::Dot) {
            ts_.next();
            if (ts_.at(Tok::Minus)) {
                ts_.fail({"atom"}, "classical negation under 'not' is not allowed");
            }
            body.negative.push_back(detail::parse_atom(ts_));
        } else if (ts_.at_ident("not")) {
            ts_.fail({"atom"}, "'not' is reserved for default negation");
        } else {
            body.positive.push_back(literal());
        }
    }

    MknfRule rule() {
        MknfRule r;
        r.pos = ts_.peek().pos;
        if (ts_.at_ident("not")) ts_.fail({"literal"}, "a rule head cannot be default-negated");
        r.head = literal();
        if (ts_.accept(Tok::If)) {
            Body b;
            body_literal(b);
            while (ts_.accept(Tok::Comma)) body_literal(b);
            r.positive_body = std::move(b.positive);
            r.negative_body = std::move(b.negative);
        }
        ts_.expect(Tok::Dot, {"':-'", "','", "'.'"});
        return r;
    }

    IntegrityConstraint constraint() {
        IntegrityConstraint ic;
        ic.pos = ts_.peek().pos;
        Body b;
        body_literal(b);
        while (ts_.accept(Tok::Comma)) body_literal(b);
        for (auto& l : b.positive) {
            if (l.classically_negated) {
                throw ParseError(l.atom.pos, "'-'", {},
                                 "classical negation is not allowed in a constraint condition");
            }
            ic.condition_positive.push_back(std::move(l.atom));
        }
        ic.condition_negative = std::move(b.negative);
        ts_.expect(Tok::Implies, {"','", "'=>'"});
        ic.actions.push_back(literal());
        while (ts_.accept(Tok::Comma)) ic.actions.push_back(literal());
        ts_.expect(Tok::Dot, {"','", "'.'"});
        return ic;
    }

    std::string_view src_;
    TokenStream ts_;
};

}  // namespace

KnowledgeBase parse_program_unchecked(std::string_view text) {
    return ProgramParser(text, TokenStream(detail::tokenize(text))).run();
}

KnowledgeBase parse_program(std::string_view text) {
    KnowledgeBase kb = parse_program_unchecked(text);
    auto diagnostics = validate(kb);
    if (has_errors(diagnostics)) throw ValidationError(std::move(diagnostics));
    return kb;
}

ConjunctiveQuery parse_query(std::string_view text) {
    TokenStream ts(detail::tokenize(text));
    ConjunctiveQuery q;
    auto conjunct = [&] {
        if (ts.at(Tok::Minus)) ts.fail({"atom", "not"}, "classical negation is not allowed in queries");
        if (ts.at_ident("not") &&
            (ts.peek(1).kind == Tok::Ident || ts.peek(1).kind == Tok::Minus)) {
            ts.next();
            if (ts.at(Tok::Minus)) {
                ts.fail({"atom"}, "classical negation is not allowed in queries");
            }
            q.negative.push_back(detail::parse_atom(ts));
        } else {
            q.positive.push_back(detail::parse_atom(ts));
        }
    };
    conjunct();
    while (ts.accept(Tok::Comma)) conjunct();
    ts.accept(Tok::Dot);
    ts.expect(Tok::End, {"','", "end of query"});

    q.answer_vars = variables_of(q.positive);
    for (const auto& n : q.negative) {
        for (const auto& t : n.args) {
            if (t.is_variable() && std::find(q.answer_vars.begin(), q.answer_vars.end(), t.name) ==
                                       q.answer_vars.end()) {
                throw ParseError(n.pos, t.name, {},
                                 "unsafe query: variable " + t.name +
                                     " does not occur in a positive conjunct");
            }
        }
    }
    return q;
}

}  // namespace hmknf
