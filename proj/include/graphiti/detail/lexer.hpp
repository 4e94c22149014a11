#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>

#include "graphiti/error.hpp"

namespace graphiti {
namespace detail {

enum class Tok { End, Ident, Int, Str, Punct };

struct Token {
    Tok kind = Tok::End;
    std::string text;  // identifier text, punct text, or string content
    bool quoted = false;  // double-quoted identifier (SQL mode)
    std::int64_t ival = 0;
    std::size_t begin = 0, end = 0;
    int line = 1, col = 1;
};

/// Hand-rolled lexer shared by the query and rule parsers. Strings use single
/// or double quotes with doubled-quote escapes; `//` and `#` start comments
/// when enabled.
struct Lexer {
    const std::string& src;
    std::size_t pos = 0;
    int line = 1, col = 1;
    bool hash_comments = false;
    bool dquote_ident = false;  // '"' delimits identifiers instead of strings

    explicit Lexer(const std::string& s, bool hash = false, bool dquote = false)
        : src(s), hash_comments(hash), dquote_ident(dquote) {}

    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n && pos < src.size(); ++i, ++pos) {
            if (src[pos] == '\n') { ++line; col = 1; } else { ++col; }
        }
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }

    Token next() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) advance(1);
        if (pos + 1 < src.size() && src[pos] == '/' && src[pos + 1] == '/') {
            while (pos < src.size() && src[pos] != '\n') advance(1);
            return next();
        }
        if (hash_comments && pos < src.size() && src[pos] == '#') {
            while (pos < src.size() && src[pos] != '\n') advance(1);
            return next();
        }
        Token t;
        t.begin = pos;
        t.line = line;
        t.col = col;
        if (pos >= src.size()) { t.kind = Tok::End; t.end = pos; return t; }
        char c = src[pos];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
                advance(1);
            t.kind = Tok::Ident;
            t.text = src.substr(start, pos - start);
            t.end = pos;
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
                advance(1);
            t.kind = Tok::Int;
            t.ival = std::stoll(src.substr(start, pos - start));
            t.end = pos;
            return t;
        }
        if (c == '\'' || c == '"') {
            char quote = c;
            bool as_ident = quote == '"' && dquote_ident;
            advance(1);
            std::string out;
            while (true) {
                if (pos >= src.size()) fail("unterminated string literal");
                if (src[pos] == quote) {
                    if (pos + 1 < src.size() && src[pos + 1] == quote) {
                        out.push_back(quote);
                        advance(2);
                        continue;
                    }
                    advance(1);
                    break;
                }
                out.push_back(src[pos]);
                advance(1);
            }
            t.kind = as_ident ? Tok::Ident : Tok::Str;
            t.quoted = as_ident;
            t.text = std::move(out);
            t.end = pos;
            return t;
        }
        static const char* multi[] = {"<=", ">=", "<>", "!=", "->", "<-"};
        for (const char* m : multi) {
            if (src.compare(pos, 2, m) == 0) {
                t.kind = Tok::Punct;
                t.text = m;
                advance(2);
                t.end = pos;
                return t;
            }
        }
        t.kind = Tok::Punct;
        t.text = std::string(1, c);
        advance(1);
        t.end = pos;
        return t;
    }
};

inline std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return s;
}

/// Common parser base: token buffer plus keyword/punctuation helpers.
/// Keywords are case-insensitive, identifiers case-sensitive.
struct ParserBase {
    const std::string& src;
    Lexer lexer;
    Token tok;

    explicit ParserBase(const std::string& s, bool hash_comments = false,
                        bool dquote_ident = false)
        : src(s), lexer(s, hash_comments, dquote_ident) {
        tok = lexer.next();
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, tok.line, tok.col);
    }

    void bump() { tok = lexer.next(); }

    struct State {
        std::size_t pos;
        int line, col;
        Token tok;
    };
    State save() const { return {lexer.pos, lexer.line, lexer.col, tok}; }
    void restore(const State& s) {
        lexer.pos = s.pos;
        lexer.line = s.line;
        lexer.col = s.col;
        tok = s.tok;
    }

    bool is_kw(const std::string& kw) const {
        return tok.kind == Tok::Ident && !tok.quoted && upper(tok.text) == kw;
    }
    bool accept_kw(const std::string& kw) {
        if (!is_kw(kw)) return false;
        bump();
        return true;
    }
    void expect_kw(const std::string& kw) {
        if (!accept_kw(kw)) fail("expected " + kw);
    }
    bool is_punct(const std::string& p) const {
        return tok.kind == Tok::Punct && tok.text == p;
    }
    bool accept(const std::string& p) {
        if (!is_punct(p)) return false;
        bump();
        return true;
    }
    void expect(const std::string& p) {
        if (!accept(p)) fail("expected '" + p + "'");
    }
    std::string expect_ident() {
        if (tok.kind != Tok::Ident) fail("expected identifier");
        std::string s = tok.text;
        bump();
        return s;
    }
};

}  // namespace detail
}  // namespace graphiti
