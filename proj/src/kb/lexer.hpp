#pragma once

// Tokenizer shared by the knowledge-base, query and compiled-program readers.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hmknf/error.hpp"
#include "hmknf/kb.hpp"

namespace hmknf::detail {

enum class Tok {
    Ident,     // lowercase-initial identifier
    Variable,  // uppercase-initial identifier
    Integer,
    String,  // "..." or '...'; text holds the unescaped contents
    LParen,
    RParen,
    Comma,
    Dot,
    If,       // :-
    Implies,  // =>
    Minus,
    Slash,
    Section,  // #name; text holds the name
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourcePos pos;
    std::size_t begin = 0;  // byte offsets into the source
    std::size_t end = 0;
};

std::string describe(const Token& t);

std::vector<Token> tokenize(std::string_view src);

/// Cursor over a token vector with the usual expect/accept helpers.
class TokenStream {
public:
    explicit TokenStream(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = idx_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    bool at(Tok k) const { return peek().kind == k; }
    bool at_ident(std::string_view name) const {
        return peek().kind == Tok::Ident && peek().text == name;
    }
    const Token& next() {
        const Token& t = peek();
        last_end_ = t.end;
        if (idx_ + 1 < toks_.size()) ++idx_;
        return t;
    }
    /// Byte offset just past the most recently consumed token.
    std::size_t last_end() const { return last_end_; }
    bool accept(Tok k) {
        if (!at(k)) return false;
        next();
        return true;
    }
    const Token& expect(Tok k, std::vector<std::string> expected) {
        if (!at(k)) fail(std::move(expected));
        return next();
    }
    [[noreturn]] void fail(std::vector<std::string> expected, std::string detail = {}) const {
        throw ParseError(peek().pos, describe(peek()), std::move(expected), std::move(detail));
    }

private:
    std::vector<Token> toks_;
    std::size_t idx_ = 0;
    std::size_t last_end_ = 0;
};

/// atom := ident [ "(" term ("," term)* ")" ]
Atom parse_atom(TokenStream& ts);

}  // namespace hmknf::detail
