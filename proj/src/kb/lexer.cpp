#include "lexer.hpp"

#include <cctype>

namespace hmknf::detail {

namespace {

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

}  // namespace

std::string describe(const Token& t) {
    switch (t.kind) {
        case Tok::Ident:
        case Tok::Variable:
        case Tok::Integer: return "'" + t.text + "'";
        case Tok::String: return "string \"" + t.text + "\"";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma: return "','";
        case Tok::Dot: return "'.'";
        case Tok::If: return "':-'";
        case Tok::Implies: return "'=>'";
        case Tok::Minus: return "'-'";
        case Tok::Slash: return "'/'";
        case Tok::Section: return "'#" + t.text + "'";
        case Tok::End: return "end of input";
    }
    return "token";
}

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;

    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };

    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '%') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }

        Token t;
        t.pos = {line, col};
        t.begin = i;

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            t.text = std::string(src.substr(i, j - i));
            t.kind = (std::isupper(static_cast<unsigned char>(c)) || c == '_') ? Tok::Variable
                                                                               : Tok::Ident;
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            t.text = std::string(src.substr(i, j - i));
            t.kind = Tok::Integer;
            advance(j - i);
        } else if (c == '"' || c == '\'') {
            const char quote = c;
            advance(1);
            std::string text;
            bool closed = false;
            while (i < src.size()) {
                char d = src[i];
                if (d == quote) {
                    advance(1);
                    closed = true;
                    break;
                }
                if (d == '\\' && i + 1 < src.size()) {
                    text += src[i + 1];
                    advance(2);
                    continue;
                }
                if (d == '\n') break;
                text += d;
                advance(1);
            }
            if (!closed) {
                throw ParseError(t.pos, "unterminated string", {}, "unterminated quoted constant");
            }
            t.kind = Tok::String;
            t.text = std::move(text);
        } else if (c == '#') {
            std::size_t j = i + 1;
            while (j < src.size() && ident_char(src[j])) ++j;
            t.kind = Tok::Section;
            t.text = std::string(src.substr(i + 1, j - i - 1));
            advance(j - i);
        } else if (c == ':' && i + 1 < src.size() && src[i + 1] == '-') {
            t.kind = Tok::If;
            advance(2);
        } else if (c == '=' && i + 1 < src.size() && src[i + 1] == '>') {
            t.kind = Tok::Implies;
            advance(2);
        } else {
            switch (c) {
                case '(': t.kind = Tok::LParen; break;
                case ')': t.kind = Tok::RParen; break;
                case ',': t.kind = Tok::Comma; break;
                case '.': t.kind = Tok::Dot; break;
                case '-': t.kind = Tok::Minus; break;
                case '/': t.kind = Tok::Slash; break;
                default:
                    throw ParseError(t.pos, std::string("'") + c + "'", {},
                                     std::string("unexpected character '") + c + "'");
            }
            advance(1);
        }
        t.end = i;
        out.push_back(std::move(t));
    }

    Token end;
    end.kind = Tok::End;
    end.pos = {line, col};
    end.begin = end.end = src.size();
    out.push_back(end);
    return out;
}

Atom parse_atom(TokenStream& ts) {
    if (!ts.at(Tok::Ident) || ts.at_ident("not")) ts.fail({"predicate name"});
    Atom a;
    a.pos = ts.peek().pos;
    a.predicate = ts.next().text;
    if (!ts.accept(Tok::LParen)) return a;
    for (;;) {
        const Token& t = ts.peek();
        switch (t.kind) {
            case Tok::Variable: a.args.push_back(Term::variable(t.text)); break;
            case Tok::Ident:
            case Tok::Integer:
            case Tok::String: a.args.push_back(Term::constant(t.text)); break;
            default: ts.fail({"variable", "constant"});
        }
        ts.next();
        if (ts.accept(Tok::Comma)) continue;
        ts.expect(Tok::RParen, {"','", "')'"});
        break;
    }
    return a;
}

}  // namespace hmknf::detail
