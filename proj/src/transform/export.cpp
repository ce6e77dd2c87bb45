#include "hmknf/export.hpp"

#include <set>
#include <sstream>

#include "../kb/lexer.hpp"
#include "hmknf/parser.hpp"
#include "hmknf/printer.hpp"

namespace hmknf {

namespace {

using detail::Tok;
using detail::TokenStream;

std::string prolog_term(const Term& t) {
    if (t.is_variable() || !needs_quotes(t.name)) return t.name;
    std::string out = "'";
    for (char c : t.name) {
        if (c == '\'' || c == '\\') out += '\\';
        out += c;
    }
    return out + "'";
}

std::string prolog_atom(const Atom& a) {
    std::string out = a.predicate;
    if (a.args.empty()) return out;
    out += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i > 0) out += ',';
        out += prolog_term(a.args[i]);
    }
    return out + ')';
}

void header(std::ostringstream& os, const DoubledProgram& p, const char* format) {
    os << "% hmknf compiled program (" << format << ")\n";
    for (const auto& s : p.symbols.entries()) {
        os << "% symbol " << s.name << '/' << s.arity;
        if (s.dl) os << " dl";
        if (s.negated) os << " negated";
        os << '\n';
    }
    for (const auto& o : p.origins) {
        os << "% origin " << to_string(o.kind) << ' ' << o.index << ' ' << o.text << '\n';
    }
    os << "% rule-origins";
    for (const auto& r : p.rules) os << ' ' << r.origin;
    os << '\n';
    for (const auto& u : p.unsupported) {
        os << "% unsupported " << u.index << ' ' << to_string(u.axiom) << '\n';
        os << "% reason " << u.reason << '\n';
    }
}

RuleLevel level_of(const std::string& head, const SymbolTable& symbols) {
    if (auto r = symbols.resolve(head)) {
        switch (r->level) {
            case Level::D: return RuleLevel::D;
            case Level::N: return RuleLevel::N;
            default: return RuleLevel::A;
        }
    }
    if (!head.empty() && head[0] == 'd') return RuleLevel::D;
    if (!head.empty() && head[0] == 'n') return RuleLevel::N;
    return RuleLevel::A;
}

std::optional<Origin::Kind> origin_kind(const std::string& s) {
    for (auto k : {Origin::Kind::Axiom, Origin::Kind::Rule, Origin::Kind::Constraint,
                   Origin::Kind::NegationAxiom}) {
        if (s == to_string(k)) return k;
    }
    return std::nullopt;
}

[[noreturn]] void bad_header(std::size_t line, const std::string& detail) {
    throw ParseError({line, 1}, "header comment", {}, detail);
}

struct Metadata {
    bool has_origins = false;
    std::vector<std::size_t> rule_origins;
};

Metadata read_header(std::string_view text, DoubledProgram& out) {
    Metadata meta;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    UnsupportedAxiom* pending = nullptr;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.rfind("% ", 0) != 0) continue;
        std::istringstream ls(line.substr(2));
        std::string key;
        ls >> key;
        if (key == "symbol") {
            std::string sig, flag;
            ls >> sig;
            auto slash = sig.rfind('/');
            if (slash == std::string::npos) bad_header(lineno, "malformed symbol line");
            std::string name = sig.substr(0, slash);
            out.symbols.add(name, std::stoul(sig.substr(slash + 1)));
            while (ls >> flag) {
                if (flag == "dl") out.symbols.mark_dl(name);
                else if (flag == "negated") out.symbols.mark_negated(name);
                else bad_header(lineno, "unknown symbol flag " + flag);
            }
        } else if (key == "origin") {
            std::string kind;
            std::size_t index = 0;
            if (!(ls >> kind >> index)) bad_header(lineno, "malformed origin line");
            auto k = origin_kind(kind);
            if (!k) bad_header(lineno, "unknown origin kind " + kind);
            std::string rest;
            std::getline(ls, rest);
            if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
            out.origins.push_back({*k, index, rest});
        } else if (key == "rule-origins") {
            meta.has_origins = true;
            std::size_t o;
            while (ls >> o) meta.rule_origins.push_back(o);
        } else if (key == "unsupported") {
            std::size_t index = 0;
            if (!(ls >> index)) bad_header(lineno, "malformed unsupported line");
            std::string rest;
            std::getline(ls, rest);
            KnowledgeBase kb = parse_program_unchecked("#ontology\n" + rest);
            if (kb.ontology.size() != 1) bad_header(lineno, "unsupported line must hold one axiom");
            out.unsupported.push_back({index, kb.ontology.front(), {}});
            pending = &out.unsupported.back();
        } else if (key == "reason") {
            if (!pending) bad_header(lineno, "reason without unsupported axiom");
            std::string rest;
            std::getline(ls, rest);
            if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
            pending->reason = rest;
            pending = nullptr;
        }
    }
    return meta;
}

void skip_directive(TokenStream& ts) {
    if (!ts.at_ident("table")) ts.fail({"'table'"});
    ts.next();
    for (;;) {
        ts.expect(Tok::Ident, {"predicate name"});
        ts.expect(Tok::Slash, {"'/'"});
        ts.expect(Tok::Integer, {"arity"});
        if (!ts.accept(Tok::Comma)) break;
    }
    ts.expect(Tok::Dot, {"'.'"});
}

ProgramRule read_clause(TokenStream& ts) {
    ProgramRule r;
    r.head = detail::parse_atom(ts);
    if (ts.accept(Tok::If)) {
        for (;;) {
            if (ts.at_ident("tnot") && ts.peek(1).kind == Tok::LParen) {
                ts.next();
                ts.next();
                r.negative.push_back(detail::parse_atom(ts));
                ts.expect(Tok::RParen, {"')'"});
            } else if (ts.at_ident("not") && ts.peek(1).kind == Tok::Ident) {
                ts.next();
                r.negative.push_back(detail::parse_atom(ts));
            } else {
                r.positive.push_back(detail::parse_atom(ts));
            }
            if (!ts.accept(Tok::Comma)) break;
        }
    }
    ts.expect(Tok::Dot, {"','", "'.'"});
    return r;
}

}  // namespace

std::string to_prolog(const ProgramRule& rule) {
    std::string out = prolog_atom(rule.head);
    if (rule.positive.empty() && rule.negative.empty()) return out + ".";
    out += ":- ";
    bool first = true;
    for (const auto& a : rule.positive) {
        if (!first) out += ',';
        first = false;
        out += prolog_atom(a);
    }
    for (const auto& a : rule.negative) {
        if (!first) out += ',';
        first = false;
        out += "tnot(" + prolog_atom(a) + ")";
    }
    return out + ".";
}

std::string write_native(const DoubledProgram& program) {
    std::ostringstream os;
    header(os, program, "native");
    os << '\n';
    for (const auto& r : program.rules) os << to_string(r) << '\n';
    return os.str();
}

std::string write_prolog(const DoubledProgram& program) {
    std::ostringstream os;
    header(os, program, "prolog");
    os << '\n';
    std::set<std::pair<std::string, std::size_t>> tabled;
    auto table = [&](const Atom& a) {
        if (tabled.emplace(a.predicate, a.arity()).second) {
            os << ":- table " << a.predicate << '/' << a.arity() << ".\n";
        }
    };
    for (const auto& r : program.rules) {
        table(r.head);
        for (const auto& a : r.positive) table(a);
        for (const auto& a : r.negative) table(a);
    }
    os << '\n';
    for (const auto& r : program.rules) os << to_prolog(r) << '\n';
    return os.str();
}

std::string write_compiled(const DoubledProgram& program, ExportFormat format) {
    return format == ExportFormat::Prolog ? write_prolog(program) : write_native(program);
}

DoubledProgram read_compiled(std::string_view text) {
    DoubledProgram out;
    Metadata meta = read_header(text, out);

    TokenStream ts(detail::tokenize(text));
    while (!ts.at(Tok::End)) {
        if (ts.accept(Tok::If)) {
            skip_directive(ts);
            continue;
        }
        out.rules.push_back(read_clause(ts));
    }

    if (meta.has_origins && meta.rule_origins.size() != out.rules.size()) {
        throw ParseError({1, 1}, "rule-origins", {},
                         "rule-origins lists " + std::to_string(meta.rule_origins.size()) +
                             " entries for " + std::to_string(out.rules.size()) + " rules");
    }
    for (std::size_t i = 0; i < out.rules.size(); ++i) {
        ProgramRule& r = out.rules[i];
        r.level = level_of(r.head.predicate, out.symbols);
        if (meta.has_origins) {
            r.origin = meta.rule_origins[i];
            if (r.origin >= out.origins.size()) {
                throw ParseError({1, 1}, "rule-origins", {},
                                 "origin index " + std::to_string(r.origin) + " out of range");
            }
        } else {
            r.origin = out.origins.size();
            out.origins.push_back({Origin::Kind::Rule, i, to_string(r)});
        }
    }
    return out;
}

}  // namespace hmknf
