#include "resolute/lexer.hpp"

#include <array>
#include <cctype>
#include <memory>

namespace resolute {

namespace {

// Longest first so that "**" wins over "*", "<=" over "<", and so on.
constexpr std::array<std::string_view, 26> kPunctuators = {
    "**", "::", "->", "=>", "<=", ">=", "<>", "(", ")", "{", "}", "[", "]",
    ",",  ":",  ";",  ".",  "=",  "<",  ">",  "+", "-", "*", "/", "!", "|",
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<Token> tokenize(std::string_view src, const std::string& file_name) {
    auto file = std::make_shared<const std::string>(file_name);
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1;
    int col = 1;

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
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }

        Token tok;
        tok.loc = SourceLocation{file, line, col};

        if (ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            tok.kind = TokenKind::Ident;
            tok.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (digit(c)) {
            std::size_t j = i;
            while (j < src.size() && digit(src[j])) ++j;
            bool real = false;
            if (j + 1 < src.size() && src[j] == '.' && digit(src[j + 1])) {
                real = true;
                ++j;
                while (j < src.size() && digit(src[j])) ++j;
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
                if (k < src.size() && digit(src[k])) {
                    real = true;
                    j = k;
                    while (j < src.size() && digit(src[j])) ++j;
                }
            }
            tok.kind = real ? TokenKind::Real : TokenKind::Int;
            tok.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (c == '"') {
            std::string body;
            advance(1);
            bool closed = false;
            while (i < src.size()) {
                char d = src[i];
                if (d == '"') {
                    advance(1);
                    closed = true;
                    break;
                }
                if (d == '\n') break;
                if (d == '\\' && i + 1 < src.size()) {
                    char e = src[i + 1];
                    switch (e) {
                        case 'n': body += '\n'; break;
                        case 't': body += '\t'; break;
                        case '"': body += '"'; break;
                        case '\\': body += '\\'; break;
                        default:
                            throw ParseError(SourceLocation{file, line, col},
                                             std::string("unknown escape '\\") + e + "'");
                    }
                    advance(2);
                    continue;
                }
                body += d;
                advance(1);
            }
            if (!closed) throw ParseError(tok.loc, "unterminated string literal");
            tok.kind = TokenKind::String;
            tok.text = std::move(body);
        } else {
            bool matched = false;
            for (auto p : kPunctuators) {
                if (src.substr(i, p.size()) == p) {
                    tok.kind = TokenKind::Punct;
                    tok.text = std::string(p);
                    advance(p.size());
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                throw ParseError(tok.loc, std::string("unexpected character '") + c + "'");
            }
        }
        out.push_back(std::move(tok));
    }

    Token end;
    end.kind = TokenKind::End;
    end.loc = SourceLocation{file, line, col};
    out.push_back(std::move(end));
    return out;
}

std::string describe(const Token& token) {
    switch (token.kind) {
        case TokenKind::Ident: return "'" + token.text + "'";
        case TokenKind::String: return "string \"" + token.text + "\"";
        case TokenKind::Int:
        case TokenKind::Real: return "number " + token.text;
        case TokenKind::Punct: return "'" + token.text + "'";
        case TokenKind::End: return "end of input";
    }
    return "token";
}

TokenStream::TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

const Token& TokenStream::peek(std::size_t ahead) const {
    std::size_t idx = pos_ + ahead;
    if (idx >= tokens_.size()) return tokens_.back();
    return tokens_[idx];
}

const Token& TokenStream::next() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
}

bool TokenStream::accept_punct(std::string_view p) {
    if (peek().is_punct(p)) {
        next();
        return true;
    }
    return false;
}

bool TokenStream::accept_ident(std::string_view word) {
    if (peek().is_ident(word)) {
        next();
        return true;
    }
    return false;
}

const Token& TokenStream::expect_punct(std::string_view p) {
    if (!peek().is_punct(p)) fail("expected '" + std::string(p) + "' but found " + describe(peek()));
    return next();
}

const Token& TokenStream::expect_ident_word(std::string_view word) {
    if (!peek().is_ident(word)) {
        fail("expected '" + std::string(word) + "' but found " + describe(peek()));
    }
    return next();
}

const Token& TokenStream::expect_kind(TokenKind kind, std::string_view what) {
    if (peek().kind != kind) fail("expected " + std::string(what) + " but found " + describe(peek()));
    return next();
}

void TokenStream::fail(const std::string& message) const { fail_at(peek(), message); }

void TokenStream::fail_at(const Token& token, const std::string& message) const {
    throw ParseError(token.loc, message);
}

}  // namespace resolute
